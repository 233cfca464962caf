#pragma once

#include "fct/balanced_packing.hpp"
#include "fct/balanced_sets.hpp"
#include "fct/bicriteria.hpp"
#include "fct/fct_u_approx.hpp"
#include "fct/greedy_pfct_s.hpp"
#include "fct/io.hpp"
#include "fct/lp_certificate.hpp"
#include "fct/model.hpp"
#include "fct/oracle.hpp"
#include "fct/problem_io.hpp"
#include "fct/problems.hpp"
#include "fct/ptas.hpp"
#include "fct/random_instances.hpp"
#include "fct/rational.hpp"
#include "fct/reductions.hpp"
#include "fct/transport.hpp"
