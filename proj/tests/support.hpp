#pragma once

#include "testkit.hpp"

#include <doctest.h>

namespace support {

using namespace polyinv;
using namespace testkit;

}  // namespace support
