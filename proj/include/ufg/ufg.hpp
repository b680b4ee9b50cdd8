#pragma once

#include "ufg/alphabet_reduction.hpp"
#include "ufg/bitvec.hpp"
#include "ufg/circuit.hpp"
#include "ufg/core.hpp"
#include "ufg/csp_chain.hpp"
#include "ufg/double_gap.hpp"
#include "ufg/eksat.hpp"
#include "ufg/error.hpp"
#include "ufg/expander.hpp"
#include "ufg/fgpr_suite.hpp"
#include "ufg/formula2graph.hpp"
#include "ufg/gap_amplification.hpp"
#include "ufg/gf2poly.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/hypergraph2formula.hpp"
#include "ufg/io.hpp"
#include "ufg/longcode.hpp"
#include "ufg/manifest.hpp"
#include "ufg/oracle.hpp"
#include "ufg/random.hpp"
#include "ufg/rational.hpp"
#include "ufg/sorting_network.hpp"
#include "ufg/sparsify.hpp"
#include "ufg/universal_poly.hpp"
#include "ufg/verifier.hpp"
