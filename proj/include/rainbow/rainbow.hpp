#pragma once

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/sequence.hpp"
#include "rainbow/core.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/formats.hpp"
#include "rainbow/equivalence.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/goodness.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/canonical.hpp"
#include "rainbow/recognition.hpp"
#include "rainbow/experiments.hpp"
