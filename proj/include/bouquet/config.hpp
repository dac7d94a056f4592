#pragma once

#include <cstdint>
#include <string>

namespace bouquet {

enum class OutputFormat { Json, Text };

// Numeric defaults shared by every entry point.
struct RunConfig {
    double tolerance = 1e-9;
    std::uint64_t budget = 100000;
    std::uint64_t seed = 20240601;
    OutputFormat format = OutputFormat::Json;

    void validate() const;
};

}  // namespace bouquet
