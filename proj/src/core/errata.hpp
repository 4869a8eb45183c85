#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"
#include "model.hpp"

namespace oscbath::errata {

/// One suspected misprint: the printed value, the rederived value, and the
/// independently measured (oracle) value that adjudicates between them.
struct Entry {
    std::string id;    // E1..E8
    std::string topic;
    std::string printed_expr;
    std::string rederived_expr;
    double printed_value = 0.0;
    double rederived_value = 0.0;
    double oracle_value = 0.0;
    double tolerance = 0.0;       // |rederived - oracle| gate
    bool rederived_agrees = false;
    bool printed_agrees = false;
    std::string verdict;          // "rederived", "printed" or "inconclusive"
    std::string note;
};

struct Ledger {
    std::vector<Entry> entries;
    bool all_rederived_confirmed = false;
    // the main coupled lattice run backing E2/E4/E6/E7/E8, exposed so callers
    // can reuse it instead of re-evolving
    lattice::OracleReport main_run;
    lattice::LatticeConfig main_cfg;
    ModelParams main_params;
};

/// Desk-scale adjudication of E1-E8. Runs three lattice evolutions (the main
/// coupled run, a second smearing for the <p^2> log slope, and an off-resonant
/// run for the <q^2> integrand); `scale` in (0,1] shrinks the lattices for
/// quick runs at reduced confidence.
Ledger build_ledger(double quad_tol = 1e-9, double scale = 1.0);

} // namespace oscbath::errata
