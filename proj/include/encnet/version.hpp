#pragma once

#define ENCNET_VERSION_MAJOR 0
#define ENCNET_VERSION_MINOR 1
#define ENCNET_VERSION_PATCH 0

namespace encnet {
inline constexpr const char* version = "0.1.0";
}
