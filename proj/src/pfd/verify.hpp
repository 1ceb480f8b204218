#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfd/multigraph.hpp"
#include "pfd/types.hpp"

namespace pfd {

struct VerifyViolation {
    std::string what;
};

/// True iff every connected component of the chosen edge set has at most
/// as many edges as vertices.
bool is_pseudoforest(const Multigraph& g, const std::vector<int>& edge_ids);

/// Recomputes everything from the raw graph: the parts partition E(g),
/// each part is a pseudoforest, and every component of the special part
/// has at most d edges. Returns the first violation found.
std::optional<VerifyViolation> verify_decomposition(const Multigraph& g, const Decomposition& dec,
                                                    const Params& p);

/// Recounts the edges inside the certificate's vertex set and checks the
/// exact density claim against threshold(k, d).
std::optional<VerifyViolation> verify_certificate(const Multigraph& g,
                                                  const DensityCertificate& cert, const Params& p);

/// Exhaustive oracle: assigns every edge to one of k+1 parts and reports
/// whether any assignment verifies. Guarded to (k+1)^e(g) <= 10^7.
bool bruteforce_decomposition_exists(const Multigraph& g, const Params& p);

}  // namespace pfd
