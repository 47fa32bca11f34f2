#pragma once

#include "sncinv/json_io.hpp"
#include "sncinv/verify.hpp"

namespace sncinv {

inline Json params_to_json(const GenParams& p) {
    return Json{{"max_components", p.max_components},
                {"max_multiplicity", p.max_multiplicity},
                {"max_codim", p.max_codim},
                {"max_extra_strata", p.max_extra_strata},
                {"max_poly_degree", p.max_poly_degree}};
}

inline GenParams params_from_json(const Json& j, const std::string& path = "params") {
    GenParams p;
    p.max_components = jsondetail::need_int(jsondetail::need(j, "max_components", path), path);
    p.max_multiplicity = jsondetail::need_int(jsondetail::need(j, "max_multiplicity", path), path);
    p.max_codim = jsondetail::need_int(jsondetail::need(j, "max_codim", path), path);
    p.max_extra_strata = jsondetail::need_int(jsondetail::need(j, "max_extra_strata", path), path);
    p.max_poly_degree = jsondetail::need_int(jsondetail::need(j, "max_poly_degree", path), path);
    return p;
}

inline Json instance_to_json(const TestInstance& inst) {
    return Json{{"seed", inst.seed},
                {"params", params_to_json(inst.params)},
                {"model", model_to_json(inst.model)},
                {"center", center_to_json(inst.center)},
                {"datum", datum_to_json(inst.datum)}};
}

inline TestInstance instance_from_json(const Json& j, const std::string& path = "instance") {
    TestInstance inst;
    const Json& seed = jsondetail::need(j, "seed", path);
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw ParseError(path + ".seed: expected an integer");
    inst.seed = seed.get<std::uint64_t>();
    inst.params = params_from_json(jsondetail::need(j, "params", path), path + ".params");
    inst.model = model_from_json(jsondetail::need(j, "model", path), path + ".model");
    inst.center = center_from_json(jsondetail::need(j, "center", path), path + ".center");
    inst.datum = datum_from_json(jsondetail::need(j, "datum", path), path + ".datum");
    return inst;
}

inline Json trial_to_json(const TrialResult& trial) {
    return Json{{"seed", trial.seed},
                {"params", params_to_json(trial.params)},
                {"equal_n1", trial.equal_n1},
                {"equal_n2", trial.equal_n},
                {"mod_power", trial.modulus_power},
                {"a0", trial.a0},
                {"lhs", truncated_formal_to_json(trial.lhs)},
                {"rhs", truncated_formal_to_json(trial.rhs)}};
}

} // namespace sncinv
