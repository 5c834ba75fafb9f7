#ifndef GBS_DECISION_HPP
#define GBS_DECISION_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gbs {

// Three-valued verdict used by every search-backed decision. A Yes always
// carries a witness; a No carries the refutation reason; Inconclusive names
// the budget that ran out.
enum class Verdict { yes, no, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "inconclusive";
    }
}

template <typename T>
struct Decision {
    Verdict verdict = Verdict::inconclusive;
    std::optional<T> witness;
    std::string reason;
    std::optional<long long> bound;  // exhausted budget, when inconclusive

    static Decision yes_with(T w, std::string why = {}) {
        Decision d;
        d.verdict = Verdict::yes;
        d.witness = std::move(w);
        d.reason = std::move(why);
        return d;
    }
    static Decision no_because(std::string why) {
        Decision d;
        d.verdict = Verdict::no;
        d.reason = std::move(why);
        return d;
    }
    static Decision inconclusive_at(std::string why, long long exhausted) {
        Decision d;
        d.verdict = Verdict::inconclusive;
        d.reason = std::move(why);
        d.bound = exhausted;
        return d;
    }

    bool is_yes() const { return verdict == Verdict::yes; }
    bool is_no() const { return verdict == Verdict::no; }
    bool is_inconclusive() const { return verdict == Verdict::inconclusive; }

    const T& value() const {
        if (!witness) throw std::logic_error("Decision has no witness");
        return *witness;
    }
};

// Knobs shared by the bounded searches. Defaults complete every bundled
// fixture in well under a second.
struct SearchBudget {
    int exponent_slack = 8;       // extra room above the derived exponent box
    long long max_path_len = 4096;
    long long max_states = 200000;
    long long snm_cap = 10000;    // state cap for non-mobile slide closure
    long long ilp_box = 128;      // branch-and-bound box for dimension >= 3
};

// Error taxonomy. Every named error in the module contracts maps to one of
// these; the CLI turns any GbsError into exit code 2.
struct GbsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define GBS_DEFINE_ERROR(Name)                       \
    struct Name : GbsError {                         \
        using GbsError::GbsError;                    \
    }

GBS_DEFINE_ERROR(ZeroLabel);
GBS_DEFINE_ERROR(BasisMismatch);
GBS_DEFINE_ERROR(DimensionMismatch);
GBS_DEFINE_ERROR(Overflow);
GBS_DEFINE_ERROR(DisconnectedGraph);
GBS_DEFINE_ERROR(ElementaryGroup);
GBS_DEFINE_ERROR(BrokenPath);
GBS_DEFINE_ERROR(InvalidSlide);
GBS_DEFINE_ERROR(InvalidInduction);
GBS_DEFINE_ERROR(InvalidAMove);
GBS_DEFINE_ERROR(InvalidSequence);
GBS_DEFINE_ERROR(NotMobile);
GBS_DEFINE_ERROR(UnsupportedClass);
GBS_DEFINE_ERROR(SignObstruction);
GBS_DEFINE_ERROR(ForbiddenEncountered);

#undef GBS_DEFINE_ERROR

struct SyntaxError : GbsError {
    int line;
    SyntaxError(const std::string& what, int line_no)
        : GbsError(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

}  // namespace gbs

#endif
