#pragma once

#include "errors.hpp"
#include "kernel.hpp"
#include "monodromy.hpp"
#include "nekrasov.hpp"
#include "partitions.hpp"
#include "special_functions.hpp"
#include "tau_engine.hpp"
#include "types.hpp"
