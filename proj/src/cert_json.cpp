#include <json.hpp>

#include "lift.hpp"
#include "parser.hpp"

namespace ssd4 {

// Certificates serialize to a JSON document with a fixed key order and
// deterministic term ordering (descending exponents), so identical inputs
// produce byte-identical files. 2-adic coefficients are decimal strings to
// stay exact at 64-bit precision.

namespace {

using Json = nlohmann::ordered_json;

Json u_to_json(const WittU& u) {
    Json arr = Json::array();
    for (auto c : u.coeffs()) arr.push_back(std::to_string(c));
    return arr;
}

Json w_to_json(const WittW& w) {
    return Json{{"a", u_to_json(w.a())}, {"b", u_to_json(w.b())}};
}

Json b_to_json(const WittB& b) {
    return Json{{"x", w_to_json(b.x())}, {"y", w_to_json(b.y())}};
}

Json tpoly_to_json(const LaurentPoly<WittB>& p) {
    Json arr = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        arr.push_back(Json{{"t", it->first}, {"c", b_to_json(it->second)}});
    return arr;
}

Json mixed_to_json(const MixedPoly<WittB>& p) {
    Json arr = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        arr.push_back(Json{{"t", it->first.first},
                           {"v", it->first.second},
                           {"c", b_to_json(it->second)}});
    return arr;
}

std::uint64_t parse_u64(const Json& j) {
    if (!j.is_string()) fail(Status::io_error, "expected a decimal string coefficient");
    const std::string s = j.get<std::string>();
    if (s.empty() || s.size() > 20) fail(Status::io_error, "bad coefficient string");
    std::uint64_t value = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') fail(Status::io_error, "bad coefficient string");
        std::uint64_t next = value * 10 + static_cast<std::uint64_t>(ch - '0');
        if (next < value) fail(Status::io_error, "coefficient overflows 64 bits");
        value = next;
    }
    return value;
}

WittU u_from_json(const Json& j, const FieldRef& field, unsigned bits) {
    if (!j.is_array() || j.size() != field->degree())
        fail(Status::io_error, "coefficient vector has the wrong length");
    WittU zero(field, bits);
    WittU acc = zero;
    // Build sum of c_i a^i using from_int and the generator power table.
    WittU a_pow = WittU::from_int(field, bits, 1);
    WittU gen = WittU::lift(FieldElem::gen(field), bits);
    for (size_t i = 0; i < j.size(); ++i) {
        WittU ci = WittU::from_int(field, bits, parse_u64(j[i]));
        acc = acc + ci * a_pow;
        a_pow = a_pow * gen;
    }
    return acc;
}

WittW w_from_json(const Json& j, const FieldRef& field, unsigned bits) {
    if (!j.is_object()) fail(Status::io_error, "expected an object for a ramified element");
    return WittW(u_from_json(j.at("a"), field, bits), u_from_json(j.at("b"), field, bits));
}

WittB b_from_json(const Json& j, const LiftRing& ring) {
    if (!j.is_object()) fail(Status::io_error, "expected an object for a beta-layer element");
    return WittB(ring, w_from_json(j.at("x"), ring->field, ring->bits),
                 w_from_json(j.at("y"), ring->field, ring->bits));
}

LaurentPoly<WittB> tpoly_from_json(const Json& j, const LiftRing& ring) {
    LaurentPoly<WittB> p(Var::t);
    for (const auto& term : j)
        p.add_term(term.at("t").get<int>(), b_from_json(term.at("c"), ring));
    return p;
}

MixedPoly<WittB> mixed_from_json(const Json& j, const LiftRing& ring) {
    MixedPoly<WittB> p;
    for (const auto& term : j)
        p.add_term(term.at("t").get<int>(), term.at("v").get<int>(),
                   b_from_json(term.at("c"), ring));
    return p;
}

FieldElem field_elem_from_text(const std::string& text, const FieldRef& field) {
    ParsedPoly p = parse_poly(text, field);
    if (!p.is_constant()) fail(Status::io_error, "expected a constant field element");
    if (p.shape == ParsedPoly::Shape::in_v) fail(Status::io_error, "expected a constant");
    const FieldElem* c = p.single.coeff(0);
    return c ? *c : FieldElem::zero(field);
}

} // namespace

std::string certificate_to_json(const LiftCertificate& cert) {
    Json j;
    j["format"] = "ssd4.lift-certificate";
    j["version"] = 1;
    j["field"] = Json{{"n", cert.field->degree()}, {"modulus", cert.field->modulus_text()}};
    j["precision"] = cert.precision;
    j["case"] = cert.small_case ? "small" : "general";
    j["m"] = cert.m;
    j["eta"] = w_to_json(cert.eta);
    j["gamma"] = cert.gamma ? w_to_json(*cert.gamma) : Json(nullptr);
    j["q_prime"] = tpoly_to_json(cert.q_prime);
    j["f"] = mixed_to_json(cert.f);
    j["g"] = mixed_to_json(cert.g);
    j["h"] = tpoly_to_json(cert.h);
    j["reduced"] = Json{{"eta", cert.eta_bar.to_string()}, {"q", to_text(cert.q_bar)}};
    j["flags"] = Json{{"identity_verified", cert.flags.identity_verified},
                      {"h_division_exact", cert.flags.h_division_exact},
                      {"g_reduces_to_one", cert.flags.g_reduces_to_one},
                      {"reduction_matches", cert.flags.reduction_matches},
                      {"non_galois_witness_unit", cert.flags.non_galois_witness_unit},
                      {"genus_consistent", cert.flags.genus_consistent}};
    j["genus"] = Json{{"g2", cert.g2}, {"g3", cert.g3}};
    j["witness"] = Json{{"valuation", cert.witness_valuation},
                        {"certified", cert.witness_certified},
                        {"unit", cert.witness_text}};
    return j.dump(2) + "\n";
}

LiftCertificate certificate_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        fail(Status::io_error, std::string("invalid certificate JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "ssd4.lift-certificate" || j.at("version") != 1)
            fail(Status::io_error, "unrecognized certificate format");
        LiftCertificate cert;
        cert.field = FieldSpec::get(j.at("field").at("n").get<unsigned>());
        if (j.at("field").at("modulus") != cert.field->modulus_text())
            fail(Status::io_error, "certificate modulus does not match the field table");
        cert.precision = j.at("precision").get<unsigned>();
        if (cert.precision < 8 || cert.precision > 64)
            fail(Status::io_error, "certificate precision out of range");
        cert.small_case = j.at("case") == "small";
        cert.m = j.at("m").get<int>();
        cert.eta = w_from_json(j.at("eta"), cert.field, cert.precision);
        cert.ring = LiftRingCtx::make(cert.eta);
        if (!j.at("gamma").is_null())
            cert.gamma = w_from_json(j.at("gamma"), cert.field, cert.precision);
        if (cert.small_case != !cert.gamma.has_value())
            fail(Status::io_error, "gamma must be present exactly in the general case");
        if (cert.small_case ? cert.m != 0 : cert.m < 1)
            fail(Status::io_error, "inconsistent case and m");
        cert.q_prime = tpoly_from_json(j.at("q_prime"), cert.ring);
        cert.f = mixed_from_json(j.at("f"), cert.ring);
        cert.g = mixed_from_json(j.at("g"), cert.ring);
        cert.h = tpoly_from_json(j.at("h"), cert.ring);
        cert.eta_bar = field_elem_from_text(j.at("reduced").at("eta"), cert.field);
        ParsedPoly q = parse_poly(j.at("reduced").at("q").get<std::string>(), cert.field);
        if (q.shape == ParsedPoly::Shape::in_v)
            fail(Status::io_error, "reduced.q must be a polynomial in t^-1");
        cert.q_bar = q.single.retagged(Var::t);
        const Json& flags = j.at("flags");
        cert.flags.identity_verified = flags.at("identity_verified").get<bool>();
        cert.flags.h_division_exact = flags.at("h_division_exact").get<bool>();
        cert.flags.g_reduces_to_one = flags.at("g_reduces_to_one").get<bool>();
        cert.flags.reduction_matches = flags.at("reduction_matches").get<bool>();
        cert.flags.non_galois_witness_unit = flags.at("non_galois_witness_unit").get<bool>();
        cert.flags.genus_consistent = flags.at("genus_consistent").get<bool>();
        cert.g2 = j.at("genus").at("g2").get<int>();
        cert.g3 = j.at("genus").at("g3").get<int>();
        cert.witness_valuation = j.at("witness").at("valuation").get<int>();
        cert.witness_certified = j.at("witness").at("certified").get<bool>();
        cert.witness_text = j.at("witness").at("unit").get<std::string>();
        return cert;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Status::io_error, std::string("malformed certificate: ") + e.what());
    }
}

} // namespace ssd4
