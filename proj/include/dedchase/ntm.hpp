#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace dedchase {

// The fixed six-symbol alphabet. ASCII serialization: 0 1 _ # o i, where
// 'o' and 'i' are the barred bits; the pretty form renders real bars.
enum class TapeSym : uint8_t { Zero, One, Blank, Hash, BarZero, BarOne };

char tape_char(TapeSym s);
std::optional<TapeSym> tape_from_char(char c);
std::string tape_pretty(TapeSym s);

enum class Move : uint8_t { Left, Right };

struct NtmTransition {
    std::string next_state;
    TapeSym write; // written to the work tape
    Move move;     // work-head move; the input head always advances right

    friend std::strong_ordering operator<=>(const NtmTransition&, const NtmTransition&) = default;
};

// A nondeterministic machine with a read-only one-way input tape and a
// one-way-infinite read-write work tape.
class Ntm {
public:
    using DeltaKey = std::tuple<std::string, TapeSym, TapeSym>; // state, input, work

    std::vector<std::string> states;
    std::string initial;
    std::set<std::string> accepting;
    std::map<DeltaKey, std::vector<NtmTransition>> delta;

    void add_transition(const std::string& state, TapeSym input, TapeSym work,
                        NtmTransition t);
    const std::vector<NtmTransition>* transitions(const std::string& state, TapeSym input,
                                                  TapeSym work) const;

    unsigned bound() const; // the largest |delta(s, a, b)|
    bool deterministic() const { return bound() <= 1; }
    // delta(s, barred-0, b) ⊆ delta(s, barred-1, b) for all s, b.
    bool convergent() const;

    void validate() const; // states declared, initial/accepting known
};

// The closure construction: on barred-1 input allow both the barred-1 and the
// barred-0 transitions. Requires a deterministic machine; the result is
// convergent and at most 2-bounded.
Ntm convergent_closure(const Ntm& m);

enum class SimOutcome { Accept, RejectExhausted, Timeout };
std::string sim_outcome_name(SimOutcome o);

// Breadth-first exploration of all choice sequences, up to step_bound steps.
// Accepts as soon as any path is in an accepting state. The work tape starts
// blank; moving left off cell 0 kills that path.
SimOutcome simulate(const Ntm& m, const std::string& input_ascii, size_t step_bound);

// Line-oriented machine files: `states:`, `initial:`, `accepting:` headers
// and `delta: s in work -> s' write move` lines, `%` comments.
Ntm parse_ntm(const std::string& text);
std::string serialize_ntm(const Ntm& m);

} // namespace dedchase
