#pragma once

#include "knotscan/braid.hpp"
#include "knotscan/diagram.hpp"
#include "knotscan/dt_code.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/khovanov.hpp"
#include "knotscan/laurent.hpp"
#include "knotscan/pipeline.hpp"
#include "knotscan/polyinv.hpp"
#include "knotscan/rasmussen.hpp"
