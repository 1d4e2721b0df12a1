#include "goodfrey/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace goodfrey {

using nlohmann::json;

std::string format4(std::optional<double> v) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return buf;
}

json to_json(const FactoredInteger& f) {
    json j;
    j["value"] = to_decimal(f.value);
    auto& arr = j["factors"] = json::array();
    for (const auto& [p, e] : f.factors) arr.push_back({to_decimal(p), e});
    j["complete"] = f.complete;
    if (!f.complete) j["cofactor"] = to_decimal(f.cofactor);
    return j;
}

json to_json(const StepReport& s) {
    json j;
    j["j"] = s.j;
    j["a"] = to_json(s.a);
    j["b"] = to_json(s.b);
    j["c"] = to_json(s.c);
    j["q"] = s.q ? json(std::round(*s.q * 10000) / 10000) : json(nullptr);
    j["good_triple"] = s.good ? json(*s.good) : json(nullptr);
    j["coprime"] = s.coprime;
    j["congruences"] = {{"a_0_mod_16", s.congruences.a_0_mod_16},
                        {"b_1_mod_4", s.congruences.b_1_mod_4}};
    if (s.congruences.a_0_mod_3)
        j["congruences"]["a_0_mod_3"] = *s.congruences.a_0_mod_3;
    j["ratio"] = to_decimal(s.ratio);
    j["ratio_exceeds_theta"] = s.ratio_exceeds_theta;
    j["ratio_exceeds_computed_root"] = s.ratio_exceeds_computed_root;
    j["rad"] = s.rad ? json(to_decimal(*s.rad)) : json(nullptr);
    if (s.blocked_cofactor != 1) j["blocked_cofactor"] = to_decimal(s.blocked_cofactor);
    if (s.j > 0) {
        j["D"] = to_decimal(s.d_value);
        j["rad_lt_abs_D"] = s.rad_lt_abs_d ? json(*s.rad_lt_abs_d) : json(nullptr);
    }
    return j;
}

json to_json(const CurveInvariants& inv) {
    json j;
    j["c4_min"] = to_decimal(inv.c4_min);
    j["c6_min"] = to_decimal(inv.c6_min);
    j["delta_min"] = to_decimal(inv.delta_min);
    j["conductor"] = inv.conductor ? to_json(*inv.conductor) : json(nullptr);
    if (inv.blocked_cofactor != 1) j["blocked_cofactor"] = to_decimal(inv.blocked_cofactor);
    j["rad_abc"] = inv.rad_abc ? json(to_decimal(*inv.rad_abc)) : json(nullptr);
    j["conductor_drops_2"] = inv.conductor_drops_2;
    j["sigma_m"] = inv.sigma_m ? json(std::round(*inv.sigma_m * 10000) / 10000) : json(nullptr);
    j["sigma"] = inv.sigma ? json(std::round(*inv.sigma * 10000) / 10000) : json(nullptr);
    j["good_curve"] = inv.good ? json(*inv.good) : json(nullptr);
    j["max_is_c4_cubed"] = inv.max_is_c4_cubed;
    return j;
}

json to_json(const TorsionReport& t) {
    json j;
    j["family"] = family_name(t.family);
    j["claimed_order"] = t.claimed_order;
    j["count_gcd"] = t.count_gcd;
    j["upper_bound"] = t.upper_bound;
    auto& counts = j["counts"] = json::array();
    for (const auto& [p, c] : t.counts) counts.push_back({p, c});
    j["halving_refuted"] = t.halving_refuted;
    auto& pts = j["exhibited"] = json::array();
    for (const auto& e : t.exhibited) {
        json pj;
        pj["point"] = e.point.infinity
                          ? json(nullptr)
                          : json::array({to_decimal(e.point.x), to_decimal(e.point.y)});
        pj["order"] = e.order;
        pts.push_back(pj);
    }
    j["certified"] = t.certified;
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

json to_json(const SeedReport& r) {
    json j = json::array();
    for (const auto& c : r.checks)
        j.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

json to_json(const MapIdentityReport& r) {
    json j;
    j["family"] = family_name(r.family);
    j["A_in_4R"] = r.a_in_4r;
    j["sum"] = r.sum_identity;
    j["bezout"] = r.bezout_identity;
    j["f"] = r.f_identity;
    j["g"] = r.g_identity;
    j["homogeneous"] = r.homogeneous;
    auto items = [&](const std::vector<PositivityCheck>& v) {
        json arr = json::array();
        for (const auto& c : v)
            arr.push_back({{"function", c.function}, {"holds", c.holds}, {"detail", c.detail}});
        return arr;
    };
    j["positive_beyond_theta"] = items(r.positive_beyond_theta);
    if (!r.positive_on_unit_interval.empty())
        j["positive_on_unit_interval"] = items(r.positive_on_unit_interval);
    return j;
}

json to_json(const PipelineRow& row) {
    json j;
    j["family"] = row.family;
    j["step"] = to_json(row.step);
    j["curve"] = row.curve ? to_json(*row.curve) : json(nullptr);
    j["torsion"] = row.torsion ? to_json(*row.torsion) : json(nullptr);
    return j;
}

std::string csv_header() {
    return "family,j,a,b,c,q,sigma_m,sigma,good_triple,good_curve,torsion_certified";
}

namespace {

std::string tri(std::optional<bool> v) { return v ? (*v ? "true" : "false") : ""; }

}  // namespace

std::string to_csv_row(const PipelineRow& row) {
    std::ostringstream os;
    os << row.family << "," << row.step.j << "," << to_decimal(row.step.a.value) << ","
       << to_decimal(row.step.b.value) << "," << to_decimal(row.step.c.value) << ","
       << format4(row.step.q) << ",";
    os << (row.curve ? format4(row.curve->sigma_m) : "") << ","
       << (row.curve ? format4(row.curve->sigma) : "") << ",";
    os << tri(row.step.good) << ",";
    os << (row.curve ? tri(row.curve->good) : "") << ",";
    os << (row.torsion ? (row.torsion->certified ? "true" : "false") : "");
    return os.str();
}

}  // namespace goodfrey
