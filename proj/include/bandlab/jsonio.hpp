#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bandlab/bandform.hpp"

namespace bandlab {

using json = nlohmann::json;

// Wire formats:
//   FieldSpec  {"p": int, "e": int, "modulus": [int,...]}
//   element    [int, ...]                 (length-e residue vector)
//   Poly       [[int,...], ...]           (constant term first)
//   BandSpec   {"m": int, "c": [...], "linear": {"<n>": [...]}}

inline json to_json(const FieldSpec& F) {
    return json{{"p", F.p()}, {"e", F.e()}, {"modulus", F.modulus()}};
}

inline FieldSpec field_from_json(const json& j) {
    const coeff_t p = j.at("p").get<coeff_t>();
    const coeff_t e = j.at("e").get<coeff_t>();
    if (j.contains("modulus") && !j.at("modulus").is_null()) {
        auto modulus = j.at("modulus").get<std::vector<coeff_t>>();
        if (e == 1 || modulus.empty()) return FieldSpec::make(p, e);
        return FieldSpec(p, e, std::move(modulus));
    }
    return FieldSpec::make(p, e);
}

inline json to_json(const Fq& x) { return json(x.coords()); }

inline Fq element_from_json(const FieldSpec& F, const json& j) {
    if (j.is_number_unsigned() || j.is_number_integer())
        return Fq::from_index(F, j.get<std::uint64_t>());
    return Fq(F, j.get<std::vector<coeff_t>>());
}

inline json to_json(const Poly& f) {
    json arr = json::array();
    for (const Fq& c : f.coeffs()) arr.push_back(to_json(c));
    return arr;
}

inline Poly poly_from_json(const FieldSpec& F, const json& j) {
    std::vector<Fq> c;
    for (const auto& item : j) c.push_back(element_from_json(F, item));
    return Poly(F, std::move(c));
}

inline json to_json(const BandSpec& spec) {
    json c = json::array();
    for (const Fq& x : spec.band()) c.push_back(to_json(x));
    json linear = json::object();
    for (const auto& [n, lambda] : spec.linear_forms()) {
        json l = json::array();
        for (const Fq& x : lambda) l.push_back(to_json(x));
        linear[std::to_string(n)] = std::move(l);
    }
    return json{{"m", spec.bandwidth()}, {"c", std::move(c)}, {"linear", std::move(linear)}};
}

inline BandSpec band_from_json(const FieldSpec& F, const json& j) {
    std::vector<Fq> c;
    for (const auto& item : j.at("c")) c.push_back(element_from_json(F, item));
    BandSpec spec(F, std::move(c));
    if (j.contains("linear")) {
        for (const auto& [key, value] : j.at("linear").items()) {
            std::vector<Fq> lambda;
            for (const auto& item : value) lambda.push_back(element_from_json(F, item));
            spec.set_linear_form(std::stoi(key), std::move(lambda));
        }
    }
    return spec;
}

}  // namespace bandlab
