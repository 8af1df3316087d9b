#pragma once

// Umbrella header: the whole toolkit in one include.

#include "vilenkin/group.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/weights.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/summability.hpp"
#include "vilenkin/hardy.hpp"
#include "vilenkin/maximal_lab.hpp"
#include "vilenkin/rng.hpp"
#include "vilenkin/verification.hpp"
#include "vilenkin/io.hpp"
#include "vilenkin/config.hpp"
#include "vilenkin/parallel.hpp"
