#pragma once

/// @file congru.hpp
/// Everything at once.

#include "congru/errors.hpp"
#include "congru/modmath.hpp"
#include "congru/padic.hpp"
#include "congru/lucas.hpp"
#include "congru/quadring.hpp"
#include "congru/exact.hpp"
#include "congru/streams.hpp"
#include "congru/registry.hpp"
#include "congru/wss_scan.hpp"
#include "congru/report.hpp"
