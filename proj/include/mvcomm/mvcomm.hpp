#pragma once

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/experiment.hpp"
#include "mvcomm/game.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/instances.hpp"
#include "mvcomm/lemma_checks.hpp"
#include "mvcomm/matrix_game.hpp"
#include "mvcomm/partitioned_instance.hpp"
#include "mvcomm/protocol.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/text_format.hpp"
#include "mvcomm/vertex_cover.hpp"
#include "mvcomm/vertex_set.hpp"
