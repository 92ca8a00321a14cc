#include "ssd4/ssd4.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "lift.hpp"
#include "parser.hpp"
#include "tower.hpp"

// Handle definitions. Each opaque struct wraps one core value; auto_extend is
// carried by the field handle and flows into classification.

struct ssd4_field {
    ssd4::FieldRef spec;
    bool auto_extend = false;
};

struct ssd4_poly {
    ssd4::ParsedPoly parsed;
    ssd4::FieldRef field;
    bool auto_extend = false;
};

struct ssd4_class {
    ssd4::ASClass cls;
    bool auto_extend = false;
};

struct ssd4_desc {
    ssd4::ClassifyResult result;
};

struct ssd4_cert {
    ssd4::LiftCertificate cert;
};

namespace {

thread_local std::string g_last_error;
thread_local long g_last_position = -1;

ssd4_status to_status(ssd4::Status s) {
    using ssd4::Status;
    switch (s) {
        case Status::ok: return SSD4_OK;
        case Status::parse_error: return SSD4_ERR_PARSE;
        case Status::unsupported_field: return SSD4_ERR_UNSUPPORTED_FIELD;
        case Status::field_mismatch: return SSD4_ERR_FIELD_MISMATCH;
        case Status::variable_mismatch: return SSD4_ERR_VARIABLE_MISMATCH;
        case Status::positive_exponent_present: return SSD4_ERR_POSITIVE_EXPONENT_PRESENT;
        case Status::no_solution_in_field: return SSD4_ERR_NO_SOLUTION_IN_FIELD;
        case Status::search_space_too_large: return SSD4_ERR_SEARCH_SPACE_TOO_LARGE;
        case Status::zero_class: return SSD4_ERR_ZERO_CLASS;
        case Status::not_d4: return SSD4_ERR_NOT_D4;
        case Status::descent_failed: return SSD4_ERR_DESCENT_FAILED;
        case Status::eta_is_one: return SSD4_ERR_ETA_IS_ONE;
        case Status::identity_failed: return SSD4_ERR_IDENTITY_FAILED;
        case Status::not_a_unit: return SSD4_ERR_NOT_A_UNIT;
        case Status::even_degree_f: return SSD4_ERR_EVEN_DEGREE_F;
        case Status::precision_exhausted: return SSD4_ERR_PRECISION_EXHAUSTED;
        case Status::invalid_argument: return SSD4_ERR_INVALID_ARGUMENT;
        case Status::io_error: return SSD4_ERR_IO;
    }
    return SSD4_ERR_INTERNAL;
}

template <class Fn>
ssd4_status guard(Fn&& fn) {
    g_last_error.clear();
    g_last_position = -1;
    try {
        fn();
        return SSD4_OK;
    } catch (const ssd4::Error& e) {
        g_last_error = e.what();
        g_last_position = e.position();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SSD4_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SSD4_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ssd4_status require(bool ok, const char* what) {
    if (ok) return SSD4_OK;
    g_last_error = what;
    g_last_position = -1;
    return SSD4_ERR_INVALID_ARGUMENT;
}

std::string identity_report_json(const ssd4::IdentityReport& rep) {
    nlohmann::ordered_json j;
    j["identity"] = rep.small_case ? "small" : "general";
    j["m"] = rep.m;
    j["holds"] = rep.holds;
    j["residual"] = rep.residual;
    j["coefficients_checked"] = rep.coefficients_checked;
    if (!rep.mutated_term.empty()) j["mutated_term"] = rep.mutated_term;
    return j.dump(2) + "\n";
}

} // namespace

extern "C" {

const char* ssd4_version(void) {
    return "1.0.0";
}

const char* ssd4_status_name(ssd4_status s) {
    switch (s) {
        case SSD4_OK: return "Ok";
        case SSD4_ERR_PARSE: return "ParseError";
        case SSD4_ERR_UNSUPPORTED_FIELD: return "UnsupportedField";
        case SSD4_ERR_FIELD_MISMATCH: return "FieldMismatch";
        case SSD4_ERR_VARIABLE_MISMATCH: return "VariableMismatch";
        case SSD4_ERR_POSITIVE_EXPONENT_PRESENT: return "PositiveExponentPresent";
        case SSD4_ERR_NO_SOLUTION_IN_FIELD: return "NoSolutionInField";
        case SSD4_ERR_SEARCH_SPACE_TOO_LARGE: return "SearchSpaceTooLarge";
        case SSD4_ERR_ZERO_CLASS: return "ZeroClass";
        case SSD4_ERR_NOT_D4: return "NotD4";
        case SSD4_ERR_DESCENT_FAILED: return "DescentFailed";
        case SSD4_ERR_ETA_IS_ONE: return "EtaIsOne";
        case SSD4_ERR_IDENTITY_FAILED: return "IdentityFailed";
        case SSD4_ERR_NOT_A_UNIT: return "NotAUnit";
        case SSD4_ERR_EVEN_DEGREE_F: return "EvenDegreeF";
        case SSD4_ERR_PRECISION_EXHAUSTED: return "PrecisionExhausted";
        case SSD4_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case SSD4_ERR_IO: return "IoError";
        case SSD4_ERR_INTERNAL: return "InternalError";
    }
    return "Unknown";
}

const char* ssd4_last_error(void) {
    return g_last_error.c_str();
}

long ssd4_last_error_position(void) {
    return g_last_position;
}

void ssd4_string_free(char* s) {
    delete[] s;
}

ssd4_status ssd4_field_new(unsigned n, int auto_extend, ssd4_field** out) {
    if (auto st = require(out != nullptr, "null output pointer")) return st;
    return guard([&] {
        auto* f = new ssd4_field{ssd4::FieldSpec::get(n), auto_extend != 0};
        *out = f;
    });
}

void ssd4_field_free(ssd4_field* f) {
    delete f;
}

unsigned ssd4_field_degree(const ssd4_field* f) {
    return f && f->spec ? f->spec->degree() : 0;
}

ssd4_status ssd4_field_modulus(const ssd4_field* f, char** out) {
    if (auto st = require(f && out, "null argument")) return st;
    return guard([&] { *out = dup_string(f->spec->modulus_text()); });
}

ssd4_status ssd4_poly_parse(const ssd4_field* f, const char* text, ssd4_poly** out) {
    if (auto st = require(f && text && out, "null argument")) return st;
    return guard([&] {
        auto* p = new ssd4_poly{ssd4::parse_poly(text, f->spec), f->spec, f->auto_extend};
        *out = p;
    });
}

void ssd4_poly_free(ssd4_poly* p) {
    delete p;
}

ssd4_status ssd4_poly_to_string(const ssd4_poly* p, char** out) {
    if (auto st = require(p && out, "null argument")) return st;
    return guard([&] {
        using ssd4::ParsedPoly;
        *out = dup_string(p->parsed.shape == ParsedPoly::Shape::in_v
                              ? ssd4::to_text(p->parsed.tv)
                              : ssd4::to_text(p->parsed.single));
    });
}

ssd4_status ssd4_class_reduce(const ssd4_poly* p, ssd4_class** out) {
    if (auto st = require(p && out, "null argument")) return st;
    return guard([&] {
        using ssd4::ParsedPoly;
        ssd4::ASClass cls =
            p->parsed.shape == ParsedPoly::Shape::in_v
                ? ssd4::ASClass::reduce(p->parsed.tv.expand_in_v(), p->field)
                : ssd4::ASClass::reduce(p->parsed.single, p->field);
        *out = new ssd4_class{std::move(cls), p->auto_extend};
    });
}

void ssd4_class_free(ssd4_class* c) {
    delete c;
}

ssd4_status ssd4_class_to_string(const ssd4_class* c, char** out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] { *out = dup_string(c->cls.to_string()); });
}

ssd4_status ssd4_class_is_zero(const ssd4_class* c, int* out) {
    if (auto st = require(c && out, "null argument")) return st;
    *out = c->cls.is_zero() ? 1 : 0;
    return SSD4_OK;
}

ssd4_status ssd4_class_pole_order(const ssd4_class* c, long* out) {
    if (auto st = require(c && out, "null argument")) return st;
    *out = c->cls.pole_order();
    return SSD4_OK;
}

ssd4_status ssd4_class_different_degree(const ssd4_class* c, long* out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] { *out = ssd4::different_degree(c->cls); });
}

ssd4_status ssd4_class_genus(const ssd4_class* c, long* out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] { *out = ssd4::genus_katz_gabber(c->cls); });
}

ssd4_status ssd4_class_galois_test(const ssd4_class* c, ssd4_galois_kind* out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] {
        if (c->cls.is_zero()) {
            *out = SSD4_CLASS_TRIVIAL;
            return;
        }
        // A class pulled back from the base (pure t or z input) is fixed.
        if (c->cls.var() != ssd4::Var::v) {
            *out = SSD4_CLASS_GALOIS;
            return;
        }
        *out = ssd4::is_galois_over_base(c->cls) ? SSD4_CLASS_GALOIS : SSD4_CLASS_NON_GALOIS;
    });
}

ssd4_status ssd4_class_is_supersimple(const ssd4_class* c, int* out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] { *out = ssd4::is_supersimple(c->cls) ? 1 : 0; });
}

ssd4_status ssd4_classify(const ssd4_class* c, ssd4_desc** out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] {
        *out = new ssd4_desc{ssd4::classify_supersimple(c->cls, c->auto_extend)};
    });
}

void ssd4_desc_free(ssd4_desc* d) {
    delete d;
}

ssd4_status ssd4_desc_eta(const ssd4_desc* d, char** out) {
    if (auto st = require(d && out, "null argument")) return st;
    return guard([&] { *out = dup_string(d->result.desc.eta.to_string()); });
}

ssd4_status ssd4_desc_q(const ssd4_desc* d, char** out) {
    if (auto st = require(d && out, "null argument")) return st;
    return guard([&] { *out = dup_string(ssd4::to_text(d->result.desc.q)); });
}

ssd4_status ssd4_desc_degree(const ssd4_desc* d, long* out) {
    if (auto st = require(d && out, "null argument")) return st;
    *out = d->result.desc.degree();
    return SSD4_OK;
}

ssd4_status ssd4_desc_different_degree(const ssd4_desc* d, long* out) {
    if (auto st = require(d && out, "null argument")) return st;
    *out = ssd4::different_of_composite(d->result.desc);
    return SSD4_OK;
}

ssd4_status ssd4_desc_used_correction(const ssd4_desc* d, int* out) {
    if (auto st = require(d && out, "null argument")) return st;
    *out = d->result.used_eta_plus_one ? 1 : 0;
    return SSD4_OK;
}

ssd4_status ssd4_desc_field_extended(const ssd4_desc* d, int* out) {
    if (auto st = require(d && out, "null argument")) return st;
    *out = d->result.field_extended ? 1 : 0;
    return SSD4_OK;
}

ssd4_status ssd4_desc_field_degree(const ssd4_desc* d, unsigned* out) {
    if (auto st = require(d && out, "null argument")) return st;
    *out = d->result.desc.eta.field()->degree();
    return SSD4_OK;
}

ssd4_status ssd4_lift(const ssd4_desc* d, unsigned precision_bits, ssd4_cert** out) {
    if (auto st = require(d && out, "null argument")) return st;
    return guard([&] {
        *out = new ssd4_cert{ssd4::construct_lift(d->result.desc, precision_bits)};
    });
}

void ssd4_cert_free(ssd4_cert* c) {
    delete c;
}

ssd4_status ssd4_cert_to_json(const ssd4_cert* c, char** out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] { *out = dup_string(ssd4::certificate_to_json(c->cert)); });
}

ssd4_status ssd4_cert_from_json(const char* json_text, ssd4_cert** out) {
    if (auto st = require(json_text && out, "null argument")) return st;
    return guard([&] { *out = new ssd4_cert{ssd4::certificate_from_json(json_text)}; });
}

ssd4_status ssd4_cert_verify(const ssd4_cert* c, int* all_ok, char** report_json) {
    if (auto st = require(c && all_ok, "null argument")) return st;
    return guard([&] {
        ssd4::VerifyReport rep = ssd4::verify_certificate(c->cert);
        *all_ok = rep.all_ok ? 1 : 0;
        if (report_json) {
            nlohmann::ordered_json j;
            j["all_ok"] = rep.all_ok;
            nlohmann::ordered_json checks = nlohmann::ordered_json::array();
            for (const auto& line : rep.checks)
                checks.push_back(nlohmann::ordered_json{
                    {"name", line.name}, {"ok", line.ok}, {"detail", line.detail}});
            j["checks"] = checks;
            *report_json = dup_string(j.dump(2) + "\n");
        }
    });
}

ssd4_status ssd4_cert_flag(const ssd4_cert* c, const char* flag_name, int* out) {
    if (auto st = require(c && flag_name && out, "null argument")) return st;
    const auto& f = c->cert.flags;
    std::string name = flag_name;
    if (name == "identity_verified") *out = f.identity_verified;
    else if (name == "h_division_exact") *out = f.h_division_exact;
    else if (name == "g_reduces_to_one") *out = f.g_reduces_to_one;
    else if (name == "reduction_matches") *out = f.reduction_matches;
    else if (name == "non_galois_witness_unit") *out = f.non_galois_witness_unit;
    else if (name == "genus_consistent") *out = f.genus_consistent;
    else return require(false, "unknown flag name");
    return SSD4_OK;
}

ssd4_status ssd4_cert_genus(const ssd4_cert* c, long* g2, long* g3) {
    if (auto st = require(c && g2 && g3, "null argument")) return st;
    *g2 = c->cert.g2;
    *g3 = c->cert.g3;
    return SSD4_OK;
}

ssd4_status ssd4_cert_kummer_json(const ssd4_cert* c, char** out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guard([&] {
        ssd4::KummerReport kr = ssd4::kummer_analysis(c->cert);
        nlohmann::ordered_json j;
        j["branch_locus"] = kr.branch_locus;
        j["conjugate_point"] = kr.conjugate_point;
        j["witness_valuation"] = kr.witness_valuation;
        j["certified_nonzero"] = kr.certified_nonzero;
        j["witness_unit"] = kr.witness_text;
        j["branch_points_over_c2"] = kr.branch_points_over_c2;
        *out = dup_string(j.dump(2) + "\n");
    });
}

ssd4_status ssd4_verify_identity(int m, char** report_json) {
    if (auto st = require(report_json != nullptr, "null argument")) return st;
    return guard([&] {
        ssd4::IdentityReport rep =
            m == 0 ? ssd4::verify_identity_small() : ssd4::verify_identity_general(m);
        *report_json = dup_string(identity_report_json(rep));
    });
}

ssd4_status ssd4_identity_term_count(int small_case, char target, size_t* out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    if (auto st = require(target == 'F' || target == 'G', "target must be 'F' or 'G'")) return st;
    return guard([&] {
        *out = ssd4::identity_term_names(small_case != 0, target == 'F' ? ssd4::MutTarget::F
                                                                        : ssd4::MutTarget::G)
                   .size();
    });
}

ssd4_status ssd4_verify_identity_mutated(int m, char target, size_t index, char** report_json) {
    if (auto st = require(report_json != nullptr, "null argument")) return st;
    if (auto st = require(target == 'F' || target == 'G', "target must be 'F' or 'G'")) return st;
    return guard([&] {
        ssd4::IdentityReport rep = ssd4::verify_identity_mutated(
            m == 0, m, target == 'F' ? ssd4::MutTarget::F : ssd4::MutTarget::G, index);
        *report_json = dup_string(identity_report_json(rep));
    });
}

} // extern "C"
