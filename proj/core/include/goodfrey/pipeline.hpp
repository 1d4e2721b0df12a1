// Glue for full runs: iterate the triple map and attach the curve
// invariants and torsion certification for every generated step.
#pragma once

#include "goodfrey/curves.hpp"
#include "goodfrey/torsion.hpp"
#include "goodfrey/triples.hpp"

#include <optional>
#include <string>
#include <vector>

namespace goodfrey {

struct PipelineRow {
    std::string family;
    StepReport step;
    std::optional<CurveInvariants> curve;    // j >= 1 only
    std::optional<TorsionReport> torsion;    // j >= 1, when requested
};

struct PipelineOptions {
    FactorBudget budget;
    bool force = false;    // run past a failing seed validation
    bool certify = true;   // attach torsion certification per step
};

struct PipelineResult {
    SeedReport seed_report;
    bool seed_forced = false;
    std::vector<PipelineRow> rows;  // rows[0] is the seed
};

PipelineResult run_pipeline(TorsionFamily t, const Int& a, const Int& b, unsigned steps,
                            const PipelineOptions& options = {});

}  // namespace goodfrey
