#include "dedchase/chase.hpp"
#include "dedchase/compiler.hpp"
#include "dedchase/encode.hpp"
#include "dedchase/lab.hpp"
#include "dedchase/models.hpp"
#include "dedchase/ntm.hpp"
#include "dedchase/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dedchase;

namespace {

constexpr int kExitParseError = 64;
constexpr int kExitSemanticError = 65;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// `--dschema "D0/1,E/1"` style arity tables.
Schema parse_schema_flag(const std::string& spec) {
    Schema s;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
            throw SemanticError("schema entry needs name/arity: " + item);
        std::string name = item.substr(0, slash);
        int arity = std::stoi(item.substr(slash + 1));
        if (name.empty() || arity < 0) throw SemanticError("bad schema entry: " + item);
        s.add(name, static_cast<unsigned>(arity));
    }
    return s;
}

struct CommonOpts {
    std::string rules_path;
    std::string data_path;
    std::string query_path;
    unsigned depth = 2000;
    unsigned max_nodes = 100000;
    unsigned workers = 1;
    uint64_t seed = 0;
    std::string format = "text";

    ChaseBounds bounds() const {
        ChaseBounds b;
        b.max_depth = depth;
        b.max_nodes = max_nodes;
        b.workers = workers;
        return b;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool rules, bool data, bool query) {
    if (rules) cmd->add_option("--rules", o.rules_path, "rule file")->required();
    if (data) cmd->add_option("--data", o.data_path, "database file")->required();
    if (query) cmd->add_option("--query", o.query_path, "query file")->required();
    cmd->add_option("--depth", o.depth, "per-branch firing bound");
    cmd->add_option("--max-nodes", o.max_nodes, "chase tree node bound");
    cmd->add_option("--workers", o.workers, "worker threads");
    cmd->add_option("--seed", o.seed, "sampler seed");
    cmd->add_option("--format", o.format, "text|trace");
}

int run_entail(const CommonOpts& o) {
    RuleSet rules = parse_rules(slurp(o.rules_path));
    Database db = parse_database(slurp(o.data_path));
    Bcq q = parse_bcq(slurp(o.query_path));

    if (o.format == "trace") {
        ChaseTree tree(Database{}, ChaseBounds{});
        Verdict v = entails_with_tree(db, rules, q, o.bounds(), tree);
        std::cout << tree.trace();
        std::cout << outcome_name(v.outcome) << "\n";
        return v.outcome == Outcome::Entailed ? 0 : v.outcome == Outcome::NotEntailed ? 1 : 2;
    }
    Verdict v = entails(db, rules, q, o.bounds());
    switch (v.outcome) {
    case Outcome::Entailed:
        std::cout << "ENTAILED\n";
        return 0;
    case Outcome::NotEntailed: {
        std::ostringstream w;
        for (const auto& f : v.witness->facts()) w << f.str() << " ";
        std::cout << "NOT-ENTAILED (witness " << w.str() << ")\n";
        return 1;
    }
    case Outcome::Unknown:
        std::cout << "UNKNOWN(" << v.note << ")\n";
        return 2;
    }
    return 2;
}

int run_answers(const CommonOpts& o) {
    RuleSet rules = parse_rules(slurp(o.rules_path));
    Database db = parse_database(slurp(o.data_path));
    Cq q = parse_cq(slurp(o.query_path));
    auto answers = certain_answers(db, rules, q, o.bounds());
    for (const auto& [tuple, verdict] : answers) {
        std::cout << "(";
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << tuple[i].str();
        }
        std::cout << ") " << outcome_name(verdict.outcome) << "\n";
    }
    return 0;
}

int run_chase(const CommonOpts& o) {
    RuleSet rules = parse_rules(slurp(o.rules_path));
    Database db = parse_database(slurp(o.data_path));
    ChaseTree tree = chase(db, rules, o.bounds());
    std::cout << tree.trace();
    return 0;
}

int run_encode(const CommonOpts& o, const std::string& dschema, const std::string& qschema) {
    Database db = parse_database(slurp(o.data_path));
    Bcq q = parse_bcq(slurp(o.query_path));
    Schema dsch = dschema.empty() ? db.schema() : parse_schema_flag(dschema);
    Schema qsch = qschema.empty() ? q.schema() : parse_schema_flag(qschema);
    std::cout << encode_input(db, q, dsch, qsch).symbols << "\n";
    return 0;
}

int run_simulate(const std::string& machine_path, const std::string& input_path,
                 size_t steps, bool close) {
    Ntm m = parse_ntm(slurp(machine_path));
    if (close) m = convergent_closure(m);
    std::string input = slurp(input_path);
    while (!input.empty() && (input.back() == '\n' || input.back() == '\r')) input.pop_back();
    SimOutcome out = simulate(m, input, steps);
    std::cout << sim_outcome_name(out) << "\n";
    return out == SimOutcome::Accept ? 0 : out == SimOutcome::RejectExhausted ? 1 : 2;
}

int run_compile(const std::string& machine_path, const std::string& dschema,
                const std::string& qschema, const std::string& out_path, bool close) {
    Ntm m = parse_ntm(slurp(machine_path));
    if (close) m = convergent_closure(m);
    if (!m.convergent() || m.bound() > 2)
        throw SemanticError("machine must be convergent and at most 2-bounded "
                            "(use --close on a deterministic machine)");
    Schema dsch = parse_schema_flag(dschema);
    Schema qsch = parse_schema_flag(qschema);
    RuleSet rules = compile(m, dsch, qsch);
    std::string text = serialize_rules(rules);
    if (out_path.empty()) std::cout << text;
    else spit(out_path, text);
    return 0;
}

int run_gen(const std::string& what, const std::string& dschema, const std::string& qschema,
            const std::string& machine_path, bool close, unsigned k) {
    if (what == "example1") {
        if (k > 0) std::cout << example1_database(k).str();
        else std::cout << serialize_rules(example1_rules());
        return 0;
    }
    if (what == "prop10") {
        if (k > 0) std::cout << prop10_database().str();
        else std::cout << serialize_rules(prop10_rules());
        return 0;
    }
    Schema dsch = dschema.empty() ? Schema{} : parse_schema_flag(dschema);
    Schema qsch = qschema.empty() ? Schema{} : parse_schema_flag(qschema);
    if (what == "sigma_s") {
        std::cout << serialize_rules(gen_sigma_s(dsch));
    } else if (what == "sigma_num") {
        std::cout << serialize_rules(gen_sigma_num(dsch));
    } else if (what == "sigma_sim" || what == "sigma_um") {
        if (what == "sigma_um") {
            std::cout << serialize_rules(gen_sigma_um(qsch));
        } else {
            Ntm m = parse_ntm(slurp(machine_path));
            if (close) m = convergent_closure(m);
            std::cout << serialize_rules(gen_sigma_sim(m, dsch, qsch));
        }
    } else {
        throw SemanticError("unknown generator: " + what);
    }
    return 0;
}

int run_check(const std::string& what, const CommonOpts& o, size_t samples) {
    CheckBudget budget;
    budget.samples = samples;
    budget.seed = o.seed;
    budget.bounds = o.bounds();

    if (what == "hom") {
        RuleSet rules = parse_rules(slurp(o.rules_path));
        CheckReport r = check_hom_preservation(rules, budget);
        std::cout << r.str();
        return r.passed() ? 0 : 1;
    }
    if (what == "product") {
        RuleSet rules = parse_rules(slurp(o.rules_path));
        CheckReport r = check_product_preservation(rules, budget);
        std::cout << r.str();
        return r.passed() ? 0 : 1;
    }
    if (what == "closure") {
        RuleSet rules = parse_rules(slurp(o.rules_path));
        // A Sem-style sample: seeded databases over the extensional part,
        // atomic queries (plus their pairwise conjunctions) over the
        // intensional part, membership decided by the exhaustive oracle.
        auto intensional = intensional_symbols(rules);
        Schema dsch, qsch;
        for (const auto& rel : rules.schema.symbols()) {
            if (intensional.count(rel)) qsch.add(rel, rules.schema.arity(rel));
            else dsch.add(rel, rules.schema.arity(rel));
        }
        OntologySample sample;
        sample.schemaD = dsch;
        sample.schemaQ = qsch;
        std::mt19937_64 rng(o.seed);
        std::vector<Term> consts;
        for (int i = 0; i < 4; ++i) consts.push_back(Term::constant("c" + std::to_string(i)));
        for (size_t i = 0; i < std::min<size_t>(samples, 20); ++i)
            sample.databases.push_back(random_database(rng, dsch, consts, 6));
        for (const auto& rel : qsch.symbols())
            if (qsch.arity(rel) == 0) sample.queries.push_back(Bcq{{Atom{rel, {}}}});
        {
            size_t n = sample.queries.size();
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i; j < n; ++j)
                    sample.queries.push_back(conjoin(sample.queries[i], sample.queries[j]));
        }
        for (size_t d = 0; d < sample.databases.size(); ++d)
            for (size_t q = 0; q < sample.queries.size(); ++q)
                if (brute_force_entails(sample.databases[d], rules, sample.queries[q]))
                    sample.pairs.emplace_back(d, q);
        CheckReport r = check_ocqa_closure(sample, budget);
        std::cout << r.str();
        return r.passed() ? 0 : 1;
    }
    if (what == "oracle") {
        std::mt19937_64 rng(o.seed);
        Schema schema{{"P", 1}, {"R", 2}};
        std::vector<Term> consts{Term::constant("c0"), Term::constant("c1"),
                                 Term::constant("c2")};
        size_t disagreements = 0, unknowns = 0, checks = 0;
        for (size_t i = 0; i < samples; ++i) {
            RuleSet rules = random_full_rules(rng, schema, 3, false);
            Database db = random_database(rng, schema, consts, 4);
            Bcq q = random_bcq(rng, schema, consts, 2, 2);
            bool oracle = brute_force_entails(db, rules, q);
            Verdict v = entails(db, rules, q, o.bounds());
            ++checks;
            if (v.outcome == Outcome::Unknown) ++unknowns;
            else if ((v.outcome == Outcome::Entailed) != oracle) ++disagreements;
        }
        std::cout << (disagreements == 0 ? "PASS" : "FAIL") << " | oracle | " << o.seed
                  << " | checks=" << checks << " unknowns=" << unknowns
                  << " disagreements=" << disagreements << "\n";
        return disagreements == 0 ? 0 : 1;
    }
    throw SemanticError("unknown check: " + what);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"disjunctive-chase reasoner and machine-to-rules compiler"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string dschema, qschema, machine_path, input_path, out_path, gen_what, check_what;
    bool close = false;
    size_t steps = 10000, samples = 200;
    unsigned k = 0;

    auto* entail = app.add_subcommand("entail", "bounded chase entailment");
    add_common(entail, opts, true, true, true);

    auto* answers = app.add_subcommand("answers", "certain answers of a CQ");
    add_common(answers, opts, true, true, true);

    auto* chase_cmd = app.add_subcommand("chase", "print the chase trace");
    add_common(chase_cmd, opts, true, true, false);

    auto* encode = app.add_subcommand("encode", "encode a database-query pair");
    add_common(encode, opts, false, true, true);
    encode->add_option("--dschema", dschema, "database schema override, e.g. D0/1,E/1");
    encode->add_option("--qschema", qschema, "query schema override");

    auto* simulate_cmd = app.add_subcommand("simulate", "run the machine interpreter");
    simulate_cmd->add_option("--machine", machine_path, "machine file")->required();
    simulate_cmd->add_option("--input", input_path, "encoded input file")->required();
    simulate_cmd->add_option("--steps", steps, "step bound");
    simulate_cmd->add_flag("--close", close, "apply the convergent closure first");

    auto* compile_cmd = app.add_subcommand("compile", "compile a machine to rules");
    compile_cmd->add_option("--machine", machine_path, "machine file")->required();
    compile_cmd->add_option("--dschema", dschema, "database schema")->required();
    compile_cmd->add_option("--qschema", qschema, "query schema")->required();
    compile_cmd->add_option("--out", out_path, "output rule file (stdout when absent)");
    compile_cmd->add_flag("--close", close, "apply the convergent closure first");

    auto* gen = app.add_subcommand("gen", "print a generated rule set or database");
    gen->add_option("what", gen_what, "sigma_s|sigma_num|sigma_sim|sigma_um|example1|prop10")
        ->required();
    gen->add_option("--dschema", dschema, "database schema");
    gen->add_option("--qschema", qschema, "query schema");
    gen->add_option("--machine", machine_path, "machine file (sigma_sim)");
    gen->add_option("--k", k, "emit the example database of size k instead of the rules");
    gen->add_flag("--close", close, "apply the convergent closure first");

    auto* check = app.add_subcommand("check", "randomized property checks");
    check->add_option("what", check_what, "closure|hom|product|oracle")->required();
    add_common(check, opts, false, false, false);
    check->add_option("--rules", opts.rules_path, "rule file (closure|hom|product)");
    check->add_option("--samples", samples, "sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*entail) return run_entail(opts);
        if (*answers) return run_answers(opts);
        if (*chase_cmd) return run_chase(opts);
        if (*encode) return run_encode(opts, dschema, qschema);
        if (*simulate_cmd) return run_simulate(machine_path, input_path, steps, close);
        if (*compile_cmd) return run_compile(machine_path, dschema, qschema, out_path, close);
        if (*gen) return run_gen(gen_what, dschema, qschema, machine_path, close, k);
        if (*check) return run_check(check_what, opts, samples);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemanticError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemanticError;
    }
    return 0;
}
