#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symbolic.hpp"
#include "tower.hpp"
#include "witt.hpp"

namespace ssd4 {

// ---------------------------------------------------------------------------
// Symbolic verification of the two product identities behind the lift:
//   (1 - 2 eta v^-1) * M = G^2 + 4 F   after substituting t^-1 = v^-2 - v^-1,
// where in the small case (deg Q' <= 1)
//   M = 1 + 2 b^2 t^-1 + 4 Q',  G = 1 + s b v^-1,
//   F = Q' - e b^2 v^-1 t^-1 - 2 e v^-1 Q',
// and in the general case (m >= 1, deg Q' < 2m, gamma a unit)
//   M = 1 + 2 b^2 t^-1 + 2 g^2 t^-2m + 2 s g t^-m + 4 Q',
//   G = 1 + s b v^-1 + s g t^-m,
//   F = Q' - e b^2 v^-1 t^-1 - 2 e v^-1 Q' - e g^2 t^-2m v^-1
//       - s e g v^-1 t^-m - g b v^-1 t^-m.
// The verification runs with fully symbolic eta, gamma and Q' coefficients in
// Z[s,b,e,g,q_i]/(s^2-2, b^2+s b+e); success means the residual normal form
// is identically zero.

struct IdentityReport {
    bool small_case = false;
    int m = 0; // 0 in the small case
    bool holds = false;
    std::string residual;         // "0" when the identity holds
    size_t coefficients_checked = 0; // v-coefficients compared
    std::string mutated_term;     // nonempty for mutation runs
};

IdentityReport verify_identity_small();
IdentityReport verify_identity_general(int m);

enum class MutTarget { F, G };

// Names of the summands of F and G eligible for single-term deletion.
std::vector<std::string> identity_term_names(bool small_case, MutTarget which);
// Re-runs the symbolic verification with one summand removed. A correct
// engine reports holds = false with a nonzero residual for every mutation.
IdentityReport verify_identity_mutated(bool small_case, int m, MutTarget which, size_t index);

// ---------------------------------------------------------------------------
// Lift certificates.

struct LiftCertificate {
    FieldRef field;
    unsigned precision = 0;
    bool small_case = true;
    int m = 0;
    LiftRing ring; // rebuilt on load; carries eta for the beta layer

    WittW eta;
    std::optional<WittW> gamma;
    LaurentPoly<WittB> q_prime{Var::t};
    MixedPoly<WittB> f, g;
    LaurentPoly<WittB> h{Var::t};

    // The supersimple description this certificate lifts.
    FieldElem eta_bar;
    LaurentPoly<FieldElem> q_bar{Var::t};

    struct Flags {
        bool identity_verified = false;
        bool h_division_exact = false;
        bool g_reduces_to_one = false;
        bool reduction_matches = false;
        bool non_galois_witness_unit = false;
        bool genus_consistent = false;
        bool all() const {
            return identity_verified && h_division_exact && g_reduces_to_one &&
                   reduction_matches && non_galois_witness_unit && genus_consistent;
        }
    } flags;

    int g2 = 0, g3 = 0;
    int witness_valuation = 0;
    bool witness_certified = false;
    std::string witness_text;

    SupersimpleDescription description() const { return {eta_bar, q_bar}; }
};

// Coefficient-wise reduction mod 2 (beta maps to the distinguished square
// root of eta-bar).
MixedPoly<FieldElem> reduce_mod2(const MixedPoly<WittB>& p);
LaurentPoly<FieldElem> reduce_mod2(const LaurentPoly<WittB>& p);

// Builds and fully checks a lift certificate for a supersimple description:
// splits off the leading gamma^2 eta t^-(2m+1) term when deg Q >= 3, lifts
// eta, gamma and Q' to 2-adic precision, forms F and G per the identity
// above, obtains H by exact division of G^2 + 4F by (1 - 2 eta v^-1), and
// runs every certificate check. Throws EtaIsOne when the reduction of eta is
// 1 (no non-Galois witness exists there).
LiftCertificate construct_lift(const SupersimpleDescription& desc, unsigned precision);

// Reduction checks: G reduces to the constant 1 and the class of the
// reduction of F equals the class of desc, via the intermediate
// [F-bar] = [eta^2 v^-1 t^-1 + Q' + eta gamma^2 t^-(2m+1)]. Mismatches are
// described term-by-term in *diff when provided.
bool reduction_matches(const LiftCertificate& cert, const SupersimpleDescription& desc,
                       std::string* diff = nullptr);

struct KummerReport {
    std::vector<std::string> branch_locus;
    std::string conjugate_point; // sigma-image of v = 2 eta in characteristic 0
    std::string witness_text;    // the certified unit (scaled witness / 4)
    int witness_valuation = 0;   // 2-adic valuation of the unscaled witness
    bool certified_nonzero = false;
    int branch_points_over_c2 = 0;
};

// Branch analysis of the Kummer form (w')^2 = (1 - 2 eta v^-1) H: evaluates
// that product at the conjugate of v = 2 eta and certifies it is a unit times
// a known power of 2. Throws NotAUnit when the certification is inconclusive
// at the stored precision.
KummerReport kummer_analysis(const LiftCertificate& cert);

// (g2, g3) with 2 g2 + 1 = v-pole order of F and g3 = 2 g2; throws
// EvenDegreeF if the pole order is even.
std::pair<int, int> genus_report(const LiftCertificate& cert);

// ---------------------------------------------------------------------------
// Serialization and re-verification.

std::string certificate_to_json(const LiftCertificate& cert);
LiftCertificate certificate_from_json(const std::string& text);

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> checks;
    bool all_ok = false;
};

// Recomputes every certificate check from the primary data (eta, gamma, m,
// Q', F, G, H) and compares against the stored flags.
VerifyReport verify_certificate(const LiftCertificate& cert);

} // namespace ssd4
