#pragma once

// Umbrella header.

#include "semsim/error.hpp"
#include "semsim/taxonomy.hpp"
#include "semsim/ingest.hpp"
#include "semsim/ic_models.hpp"
#include "semsim/similarity.hpp"
#include "semsim/eval.hpp"
#include "semsim/snapshot.hpp"
