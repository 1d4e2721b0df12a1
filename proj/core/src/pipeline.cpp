#include "goodfrey/pipeline.hpp"

namespace goodfrey {

PipelineResult run_pipeline(TorsionFamily t, const Int& a, const Int& b, unsigned steps,
                            const PipelineOptions& options) {
    ABCTriple seed = make_triple(a, b, options.budget);
    IterateOptions io;
    io.budget = options.budget;
    io.force = options.force;
    IterateResult it = iterate(t, seed, steps, io);

    PipelineResult out;
    out.seed_report = it.seed_report;
    out.seed_forced = it.seed_forced;
    const std::string name = family_name(t);
    for (std::size_t j = 0; j < it.steps.size(); ++j) {
        PipelineRow row;
        row.family = name;
        row.step = it.steps[j];
        if (j >= 1) {
            ABCTriple triple{it.steps[j].a, it.steps[j].b, it.steps[j].c};
            row.curve = minimal_invariants(triple);
            if (options.certify)
                row.torsion = certify_torsion(t, it.steps[j - 1].a.value, it.steps[j - 1].b.value);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace goodfrey
