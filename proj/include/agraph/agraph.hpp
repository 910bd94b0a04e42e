// agraph - edge structure of finite idempotent algebras
//
// Umbrella header.

#ifndef AGRAPH_AGRAPH_HPP_
#define AGRAPH_AGRAPH_HPP_

#include "alg_io.hpp"        // IWYU pragma: export
#include "congruence.hpp"    // IWYU pragma: export
#include "connectivity.hpp"  // IWYU pragma: export
#include "core.hpp"          // IWYU pragma: export
#include "edges.hpp"         // IWYU pragma: export
#include "enumerate.hpp"     // IWYU pragma: export
#include "error.hpp"         // IWYU pragma: export
#include "partition.hpp"     // IWYU pragma: export
#include "reduct.hpp"        // IWYU pragma: export
#include "subpower.hpp"      // IWYU pragma: export
#include "term.hpp"          // IWYU pragma: export
#include "thin.hpp"          // IWYU pragma: export
#include "verify.hpp"        // IWYU pragma: export

#endif  // AGRAPH_AGRAPH_HPP_
