#include "dedchase/ntm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dedchase {

char tape_char(TapeSym s) {
    switch (s) {
    case TapeSym::Zero: return '0';
    case TapeSym::One: return '1';
    case TapeSym::Blank: return '_';
    case TapeSym::Hash: return '#';
    case TapeSym::BarZero: return 'o';
    case TapeSym::BarOne: return 'i';
    }
    return '?';
}

std::optional<TapeSym> tape_from_char(char c) {
    switch (c) {
    case '0': return TapeSym::Zero;
    case '1': return TapeSym::One;
    case '_': return TapeSym::Blank;
    case '#': return TapeSym::Hash;
    case 'o': return TapeSym::BarZero;
    case 'i': return TapeSym::BarOne;
    default: return std::nullopt;
    }
}

std::string tape_pretty(TapeSym s) {
    switch (s) {
    case TapeSym::BarZero: return "0̄";
    case TapeSym::BarOne: return "1̄";
    case TapeSym::Hash: return "♯";
    case TapeSym::Blank: return "□";
    default: return std::string(1, tape_char(s));
    }
}

void Ntm::add_transition(const std::string& state, TapeSym input, TapeSym work,
                         NtmTransition t) {
    auto& v = delta[{state, input, work}];
    if (std::find(v.begin(), v.end(), t) == v.end()) {
        v.push_back(std::move(t));
        std::sort(v.begin(), v.end());
    }
}

const std::vector<NtmTransition>* Ntm::transitions(const std::string& state, TapeSym input,
                                                   TapeSym work) const {
    auto it = delta.find({state, input, work});
    return it == delta.end() ? nullptr : &it->second;
}

unsigned Ntm::bound() const {
    size_t b = 0;
    for (const auto& [key, v] : delta) b = std::max(b, v.size());
    return static_cast<unsigned>(b);
}

bool Ntm::convergent() const {
    for (const auto& [key, v] : delta) {
        const auto& [state, input, work] = key;
        if (input != TapeSym::BarZero) continue;
        const auto* one = transitions(state, TapeSym::BarOne, work);
        for (const auto& t : v) {
            if (!one || std::find(one->begin(), one->end(), t) == one->end()) return false;
        }
    }
    return true;
}

void Ntm::validate() const {
    std::set<std::string> known(states.begin(), states.end());
    if (states.empty()) throw std::invalid_argument("machine has no states");
    if (!known.count(initial)) throw std::invalid_argument("unknown initial state: " + initial);
    for (const auto& s : accepting)
        if (!known.count(s)) throw std::invalid_argument("unknown accepting state: " + s);
    for (const auto& [key, v] : delta) {
        if (!known.count(std::get<0>(key)))
            throw std::invalid_argument("transition from unknown state: " + std::get<0>(key));
        for (const auto& t : v)
            if (!known.count(t.next_state))
                throw std::invalid_argument("transition to unknown state: " + t.next_state);
    }
}

Ntm convergent_closure(const Ntm& m) {
    if (!m.deterministic())
        throw std::invalid_argument("convergent_closure expects a deterministic machine");
    Ntm out = m;
    for (const auto& [key, v] : m.delta) {
        const auto& [state, input, work] = key;
        if (input != TapeSym::BarZero) continue;
        for (const auto& t : v) out.add_transition(state, TapeSym::BarOne, work, t);
    }
    return out;
}

std::string sim_outcome_name(SimOutcome o) {
    switch (o) {
    case SimOutcome::Accept: return "accept";
    case SimOutcome::RejectExhausted: return "reject-exhausted";
    case SimOutcome::Timeout: return "timeout";
    }
    return "?";
}

namespace {

struct Config {
    std::string state;
    std::vector<TapeSym> tape;
    size_t head = 0;

    friend std::strong_ordering operator<=>(const Config&, const Config&) = default;
};

} // namespace

SimOutcome simulate(const Ntm& m, const std::string& input_ascii, size_t step_bound) {
    m.validate();
    std::vector<TapeSym> input;
    input.reserve(input_ascii.size());
    for (char c : input_ascii) {
        auto s = tape_from_char(c);
        if (!s) throw std::invalid_argument(std::string("bad tape character: ") + c);
        input.push_back(*s);
    }

    std::set<Config> frontier;
    frontier.insert(Config{m.initial, {TapeSym::Blank}, 0});

    for (size_t step = 0;; ++step) {
        if (frontier.empty()) return SimOutcome::RejectExhausted;
        for (const auto& c : frontier)
            if (m.accepting.count(c.state)) return SimOutcome::Accept;
        if (step >= step_bound) return SimOutcome::Timeout;

        TapeSym in = step < input.size() ? input[step] : TapeSym::Blank;
        std::set<Config> next;
        for (const auto& c : frontier) {
            const auto* ts = m.transitions(c.state, in, c.tape[c.head]);
            if (!ts) continue;
            for (const auto& t : *ts) {
                Config n = c;
                n.state = t.next_state;
                n.tape[n.head] = t.write;
                if (t.move == Move::Left) {
                    if (n.head == 0) continue; // fell off the one-way tape
                    --n.head;
                } else {
                    ++n.head;
                    if (n.head == n.tape.size()) n.tape.push_back(TapeSym::Blank);
                }
                next.insert(std::move(n));
            }
        }
        frontier = std::move(next);
    }
}

Ntm parse_ntm(const std::string& text) {
    Ntm m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("machine file line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto cut = line.find('%');
        if (cut != std::string::npos) line.erase(cut);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "states:") {
            std::string s;
            while (ls >> s) m.states.push_back(s);
        } else if (head == "initial:") {
            if (!(ls >> m.initial)) fail("missing initial state");
        } else if (head == "accepting:") {
            std::string s;
            while (ls >> s) m.accepting.insert(s);
        } else if (head == "delta:") {
            std::string from, insym, worksym, arrow, to, writesym, move;
            if (!(ls >> from >> insym >> worksym >> arrow >> to >> writesym >> move))
                fail("expected `delta: s in work -> s' write move`");
            if (arrow != "->") fail("expected '->'");
            if (insym.size() != 1 || worksym.size() != 1 || writesym.size() != 1)
                fail("tape symbols are single characters");
            auto a = tape_from_char(insym[0]);
            auto b = tape_from_char(worksym[0]);
            auto w = tape_from_char(writesym[0]);
            if (!a || !b || !w) fail("unknown tape symbol");
            if (move != "L" && move != "R") fail("move must be L or R");
            m.add_transition(from, *a, *b,
                             NtmTransition{to, *w, move == "L" ? Move::Left : Move::Right});
        } else {
            fail("unknown directive: " + head);
        }
    }
    m.validate();
    return m;
}

std::string serialize_ntm(const Ntm& m) {
    std::ostringstream os;
    os << "states:";
    for (const auto& s : m.states) os << " " << s;
    os << "\ninitial: " << m.initial << "\naccepting:";
    for (const auto& s : m.accepting) os << " " << s;
    os << "\n";
    for (const auto& [key, v] : m.delta) {
        const auto& [state, input, work] = key;
        for (const auto& t : v)
            os << "delta: " << state << " " << tape_char(input) << " " << tape_char(work)
               << " -> " << t.next_state << " " << tape_char(t.write) << " "
               << (t.move == Move::Left ? "L" : "R") << "\n";
    }
    return os.str();
}

} // namespace dedchase
