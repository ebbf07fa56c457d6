#ifndef MVDL_MVDL_HPP
#define MVDL_MVDL_HPP

#include "mvdl/core.hpp"
#include "mvdl/learner.hpp"
#include "mvdl/oracles.hpp"
#include "mvdl/reductions.hpp"
#include "mvdl/relations.hpp"
#include "mvdl/text.hpp"

#endif  // MVDL_MVDL_HPP
