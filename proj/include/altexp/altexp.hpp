#pragma once

#include "blocks.hpp"
#include "butterfly.hpp"
#include "certify.hpp"
#include "characters.hpp"
#include "cube.hpp"
#include "errors.hpp"
#include "gem.hpp"
#include "generating_set.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "interval.hpp"
#include "line_action.hpp"
#include "perm.hpp"
#include "random_perm.hpp"
#include "randwalk.hpp"
#include "report.hpp"
#include "ring.hpp"
#include "rng.hpp"
#include "schreier_sims.hpp"
#include "spectral.hpp"
#include "verify.hpp"
#include "words.hpp"
