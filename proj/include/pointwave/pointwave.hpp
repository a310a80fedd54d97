#pragma once

// Umbrella header for the whole library.

#include "pointwave/errors.hpp"
#include "pointwave/dd.hpp"
#include "pointwave/complex.hpp"
#include "pointwave/lambda.hpp"
#include "pointwave/superosc.hpp"
#include "pointwave/evolution.hpp"
#include "pointwave/series_operator.hpp"
#include "pointwave/threads.hpp"
#include "pointwave/packet.hpp"
#include "pointwave/crank_nicolson.hpp"
#include "pointwave/serialize.hpp"
