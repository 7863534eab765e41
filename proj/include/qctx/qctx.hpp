#pragma once

#include "qctx/coarse.hpp"
#include "qctx/context.hpp"
#include "qctx/error.hpp"
#include "qctx/intervals.hpp"
#include "qctx/ks.hpp"
#include "qctx/linalg.hpp"
#include "qctx/poset.hpp"
#include "qctx/random.hpp"
#include "qctx/serialize.hpp"
#include "qctx/state.hpp"
#include "qctx/tolerance.hpp"
#include "qctx/valuation.hpp"
