#pragma once

// vendored single header when present, packaged nlohmann otherwise
#if __has_include(<json.hpp>)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif
