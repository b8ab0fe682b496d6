#pragma once

#include "dedchase/database.hpp"
#include "dedchase/ntm.hpp"
#include "dedchase/rule.hpp"

#include <string>

namespace dedchase {

// Rule generators for the machine-to-rules construction. The generated sets
// share an auxiliary vocabulary (DC, LT, Succ, Num, arithmetic relations,
// configuration relations); compile() rejects user schemas that collide
// with it.
//
// Number spine: a chain of fresh nulls seeded once per branch (Min) and
// extended forever (Succ), with LT closed transitively. Database constants
// are kept off the spine and tied to it by CPos (constant -> rank). The
// rank assignment emitted by gen_sigma_sim is exact for databases with at
// most one constant, which is the regime the simulation targets; larger
// active domains make every branch fail or raise Undesired.

// The ordering vocabulary: DC collection per database relation, the guessed
// linear order LT with Undesired on cycles, NotMin/LTNotSucc witnesses, the
// Min seed with its uniqueness rule, and the Succ/Num spine.
RuleSet gen_sigma_s(const Schema& dsch);

// gen_sigma_s plus arithmetic: Add, Mul, doubling/halving with parity, the
// binary Bit0/Bit1 relations, Len and LE.
RuleSet gen_sigma_num(const Schema& dsch);

// Simulation of a convergent, at-most-2-bounded machine: input-tape layout
// arithmetic (PosD/PosQ, BCQ numbering, HasQ/NHasQ), tape and state
// initialization, transition and frame rules, and acceptance.
RuleSet gen_sigma_sim(const Ntm& m, const Schema& dsch, const Schema& qsch);

// The universal-model part: variable renaming (QVar/NewV/Name) and the
// copy rules per query relation, plus the Undesired saturation rules.
RuleSet gen_sigma_um(const Schema& qsch);

// Union of gen_sigma_num, gen_sigma_sim and gen_sigma_um with collision
// checks; the database schema stays purely extensional.
RuleSet compile(const Ntm& m, const Schema& dsch, const Schema& qsch);

} // namespace dedchase
