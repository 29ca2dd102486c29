#pragma once

#include "pkmeans/clustering.hpp"
#include "pkmeans/csv.hpp"
#include "pkmeans/dataset.hpp"
#include "pkmeans/geometry.hpp"
#include "pkmeans/oracle.hpp"
#include "pkmeans/outliers.hpp"
#include "pkmeans/penalty.hpp"
#include "pkmeans/pipeline.hpp"
#include "pkmeans/rng.hpp"
#include "pkmeans/svg.hpp"
#include "pkmeans/synth.hpp"
