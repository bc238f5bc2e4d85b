// ultralab — exact finite-depth computations over pro-finite structures:
// finite amalgamation deciders, truncated cochains with dyadic metrics,
// the quotient/limit adjunction, the explicit Rado constructions, shift
// conjugation games and the ordered lexicographic tower.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>

#include "ultralab/amalgamation.hpp"
#include "ultralab/dynamics.hpp"
#include "ultralab/linorder.hpp"
#include "ultralab/rado.hpp"
#include "ultralab/seqlim.hpp"

using namespace ultralab;

namespace {

int g_exit = 0;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

std::uint64_t budget_steps(std::uint64_t flag_value) {
    if (flag_value != 0) return flag_value;
    if (const char* env = std::getenv("ULTRALAB_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

void emit(const Json& payload, const std::string& format) {
    if (format == "text") {
        if (payload.is_string())
            std::cout << payload.get<std::string>() << "\n";
        else
            std::cout << payload.dump(2) << "\n";
    } else {
        std::cout << payload.dump(2) << "\n";
    }
}

ClassPresentation parse_class(const std::string& name, int max_size) {
    if (name == "graphs") return ClassPresentation::graphs_with_loops(max_size);
    if (name == "linorders") return ClassPresentation::linear_orders(max_size);
    if (name.rfind("age:", 0) == 0)
        return ClassPresentation::age_of(structure_from_json(load_json(name.substr(4))), max_size);
    throw InputError("unknown class: " + name + " (use graphs, linorders or age:<file>)");
}

BigNat parse_vertex(const Json& j) {
    if (j.is_number_unsigned()) return BigNat(j.get<std::uint64_t>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("g:", 0) == 0)
            return rado::ProRado::generic_vertex(std::stoull(s.substr(2)));
        return BigNat::from_decimal(s);
    }
    throw InputError("branch entries must be numbers or vertex strings");
}

Json vertex_json(const BigNat& v) {
    using rado::OmegaLazy;
    if (OmegaLazy::is_generic(v))
        return "g:" + (v - OmegaLazy::generic_base()).to_decimal();
    if (v.fits_u64()) return v.as_u64();
    return v.to_decimal();
}

rado::RBranch parse_rbranch(const rado::ProRado& R, const Json& j) {
    std::vector<BigNat> prefix;
    for (const auto& e : j.at("prefix")) prefix.push_back(parse_vertex(e));
    return rado::RBranch(&R, prefix);
}

Json rbranch_json(const rado::RBranch& b, int depth) {
    Json prefix = Json::array();
    for (int i = 0; i <= depth; ++i) prefix.push_back(vertex_json(b.at(i)));
    return Json{{"prefix", prefix}};
}

linorder::LexBranch parse_lex_branch(const linorder::LexSpace& space, const Json& j) {
    std::vector<linorder::Rational> coords;
    for (const auto& e : j.at("prefix")) coords.push_back(linorder::Rational::parse(e.get<std::string>()));
    return linorder::lex_branch(space, coords);
}

std::vector<rado::Word> parse_word_list(const std::string& csv) {
    std::vector<rado::Word> out;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(rado::word_from_cli(cur));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    return out;
}

dynamics::PartialIso parse_pairs(const rado::ProRado& R, const Json& j, int depth) {
    std::vector<std::pair<rado::RBranch, rado::RBranch>> pairs;
    for (const auto& p : j.at("pairs"))
        pairs.emplace_back(parse_rbranch(R, p.at("a")), parse_rbranch(R, p.at("b")));
    return dynamics::PartialIso::make(std::move(pairs), depth);
}

// builtin cochains for the limit/seq commands
Cochain builtin_cochain(const std::string& name, const rado::ProRado& R, int depth, int width) {
    if (name == "k2-example") return Cochain::k2_example(depth);
    if (name == "pro-rado") return rado::pro_rado_truncation(R, depth, width);
    return Cochain::from_json(load_json(name));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pro-finite structure laboratory"};
    app.require_subcommand(1);

    std::string format = "json";
    int depth = 8;
    int bound = 0;
    std::uint64_t budget_flag = 0;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "json|dot|text")->capture_default_str();
    app.add_option("--depth", depth, "working depth")->capture_default_str();
    app.add_option("--bound", bound, "search bound (default |B1|+|B2|+2)");
    app.add_option("--budget", budget_flag, "search step budget (env ULTRALAB_BUDGET)");
    app.add_option("--seed", seed, "seed for sampled certificates")->capture_default_str();

    // ------------------------------------------------------------- class --
    auto* cls_cmd = app.add_subcommand("class", "class generation");
    auto* cls_list = cls_cmd->add_subcommand("list", "representatives up to isomorphism");
    std::string cls_name = "graphs";
    int cls_max = 3;
    cls_list->add_option("--class", cls_name, "graphs|linorders|age:<file>");
    cls_list->add_option("--max-size", cls_max, "size cap");
    cls_list->callback([&] {
        auto cls = parse_class(cls_name, cls_max);
        Json out = Json::array();
        for (const auto& m : cls.members(cls_max)) out.push_back(structure_to_json(m));
        emit(Json{{"class", cls_name}, {"members", out}}, format);
    });

    // ------------------------------------------------------------- amalg --
    auto* amalg = app.add_subcommand("amalg", "bounded amalgamation deciders");
    auto* check = amalg->add_subcommand("check", "decide a property on an instance");
    std::string property = "ap";
    std::string amalg_class = "graphs";
    std::string span_file, instance_file;
    check->add_option("--property", property, "ap|jep|aep|hap|vvap|strict")->required();
    check->add_option("--class", amalg_class, "graphs|linorders|age:<file>")->required();
    check->add_option("--span", span_file, "span JSON file");
    check->add_option("--instance", instance_file, "instance JSON file");
    check->callback([&] {
        auto cls = parse_class(amalg_class, 8);
        auto load_span = [&](const Json& j) {
            return Span::make(structure_from_json(j.at("A")), structure_from_json(j.at("B1")),
                              structure_from_json(j.at("B2")), vertex_map_from_json(j.at("f1")),
                              vertex_map_from_json(j.at("f2")));
        };
        Verdict v{Verdict::Outcome::no_up_to_bound, 0, nullptr, nullptr};
        if (property == "ap" || property == "strict") {
            Json j = load_json(span_file.empty() ? instance_file : span_file);
            auto span = load_span(j);
            int b = bound > 0 ? bound : default_bound(span);
            v = property == "ap" ? check_ap(cls, span, b) : check_strict(cls, span, b);
        } else if (property == "jep") {
            Json j = load_json(instance_file.empty() ? span_file : instance_file);
            FinStructure A = structure_from_json(j.at("A"));
            FinStructure B = structure_from_json(j.at("B"));
            int b = bound > 0 ? bound : A.size() + B.size() + 2;
            v = check_jep(cls, A, B, b);
        } else if (property == "aep" || property == "vvap") {
            Json j = load_json(instance_file.empty() ? span_file : instance_file);
            auto span = load_span(j);
            auto inst = AEPInstance::make(span, structure_from_json(j.at("T")),
                                          vertex_map_from_json(j.at("h1")),
                                          vertex_map_from_json(j.at("h2")));
            int b = bound > 0 ? bound : default_bound(inst.span);
            v = property == "aep" ? check_aep(cls, inst, b)
                                  : check_vvap(cls, inst.T, inst, b);
        } else if (property == "hap") {
            Json j = load_json(instance_file.empty() ? span_file : instance_file);
            FinStructure A = structure_from_json(j.at("A"));
            FinStructure B1 = structure_from_json(j.at("B1"));
            FinStructure B2 = structure_from_json(j.at("B2"));
            Morphism f1{A, B1, vertex_map_from_json(j.at("f1"))};
            Morphism f2{A, B2, vertex_map_from_json(j.at("f2"))};
            int b = bound > 0 ? bound : B1.size() + B2.size() + 2;
            v = check_hap(cls, A, B1, B2, f1, f2, b);
        } else {
            throw InputError("unknown property: " + property);
        }
        std::string upper = property;
        for (auto& ch : upper) ch = static_cast<char>(toupper(static_cast<unsigned char>(ch)));
        emit(v.to_json(upper), format);
    });

    // ------------------------------------------------------------- limit --
    auto* limit = app.add_subcommand("limit", "metric operations on limits");
    std::string cochain_name = "k2-example";
    std::string a_file, b_file, tuple_file, relation = "rho";
    int level_flag = 0;
    int width = 6;
    limit->add_option("--cochain", cochain_name, "pro-rado|k2-example|lex-q|<file>");
    limit->add_option("--width", width, "window width for pro-rado truncations");
    auto* dist = limit->add_subcommand("dist", "branch distance");
    dist->add_option("--a", a_file)->required();
    dist->add_option("--b", b_file)->required();
    auto* agree = limit->add_subcommand("agree", "agreement level");
    agree->add_option("--a", a_file)->required();
    agree->add_option("--b", b_file)->required();
    auto* rlow = limit->add_subcommand("rel-lower", "lower relation value of a tuple");
    rlow->add_option("--tuple", tuple_file, "JSON {\"branches\":[...]}")->required();
    rlow->add_option("--relation", relation);
    auto* rup = limit->add_subcommand("rel-upper", "upper relation value of a tuple");
    rup->add_option("--tuple", tuple_file)->required();
    rup->add_option("--relation", relation);
    auto* strong = limit->add_subcommand("strong-at", "strongness of a projection");
    strong->add_option("--level", level_flag);
    auto* tree = limit->add_subcommand("tree", "DOT export of the level tree");

    auto run_limit = [&](const std::string& which) {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        if (cochain_name == "lex-q") {
            linorder::LexSpace space;
            if (which == "dist" || which == "agree") {
                auto x = parse_lex_branch(space, load_json(a_file));
                auto y = parse_lex_branch(space, load_json(b_file));
                if (which == "dist") {
                    emit(Json{{"distance", level_to_json(distance(x, y, depth))}}, format);
                } else {
                    auto ag = agreement_level(x, y, depth);
                    emit(ag.exhausted()
                             ? Json{{"agreement", "exhausted"}, {"depth", depth}}
                             : Json{{"agreement", level_to_json(*ag.value)}},
                         format);
                }
                return;
            }
            throw InputError("lex-q supports dist and agree only");
        }
        if (cochain_name == "pro-rado") {
            if (which == "dist" || which == "agree") {
                auto x = parse_rbranch(R, load_json(a_file));
                auto y = parse_rbranch(R, load_json(b_file));
                if (which == "dist") {
                    emit(Json{{"distance", level_to_json(distance(x, y, depth))}}, format);
                } else {
                    auto ag = agreement_level(x, y, depth);
                    emit(ag.exhausted()
                             ? Json{{"agreement", "exhausted"}, {"depth", depth}}
                             : Json{{"agreement", level_to_json(*ag.value)}},
                         format);
                }
                return;
            }
            if (which == "rel-lower") {
                Json j = load_json(tuple_file);
                std::vector<rado::RBranch> tuple;
                for (const auto& e : j.at("branches")) tuple.push_back(parse_rbranch(R, e));
                emit(Json{{"value", level_to_json(rel_value_lower(R, relation, tuple, depth))}},
                     format);
                return;
            }
            if (which == "strong-at") {
                auto rep = rado::pro_rado_strong_at(R, level_flag, depth, width);
                emit(Json{{"strong", rep.strong},
                          {"relation", rep.relation},
                          {"tuple", rep.tuple},
                          {"depth", rep.depth}},
                     format);
                return;
            }
        }
        FiniteCochainSpace space(builtin_cochain(cochain_name, R, depth, width));
        if (which == "dist" || which == "agree") {
            Json ja = load_json(a_file), jb = load_json(b_file);
            Branch x(&space, ja.at("prefix").get<std::vector<Vertex>>());
            Branch y(&space, jb.at("prefix").get<std::vector<Vertex>>());
            if (which == "dist")
                emit(Json{{"distance", level_to_json(distance(x, y, depth))}}, format);
            else {
                auto ag = agreement_level(x, y, depth);
                emit(ag.exhausted() ? Json{{"agreement", "exhausted"}, {"depth", depth}}
                                    : Json{{"agreement", level_to_json(*ag.value)}},
                     format);
            }
        } else if (which == "rel-lower" || which == "rel-upper") {
            Json j = load_json(tuple_file);
            std::vector<Branch> tuple;
            for (const auto& e : j.at("branches"))
                tuple.emplace_back(&space, e.at("prefix").get<std::vector<Vertex>>());
            if (which == "rel-lower")
                emit(Json{{"value", level_to_json(rel_value_lower(space, relation, tuple, depth))}},
                     format);
            else {
                auto [value, exact] = rel_value_upper(space, relation, tuple, depth);
                emit(Json{{"value", level_to_json(value)}, {"exact", exact}}, format);
            }
        } else if (which == "strong-at") {
            auto rep = is_strong_at(space, level_flag, depth);
            emit(Json{{"strong", rep.strong},
                      {"relation", rep.relation},
                      {"tuple", rep.tuple},
                      {"depth", rep.depth}},
                 format);
        } else if (which == "tree") {
            std::cout << tree_to_dot(space.cochain(), depth);
        }
    };
    dist->callback([&] { run_limit("dist"); });
    agree->callback([&] { run_limit("agree"); });
    rlow->callback([&] { run_limit("rel-lower"); });
    rup->callback([&] { run_limit("rel-upper"); });
    strong->callback([&] { run_limit("strong-at"); });
    tree->callback([&] { run_limit("tree"); });

    // --------------------------------------------------------------- seq --
    auto* seq = app.add_subcommand("seq", "quotient tower and adjunction checks");
    auto* quot = seq->add_subcommand("quotient", "level quotient of the limit");
    quot->add_option("--cochain", cochain_name);
    quot->add_option("--level", level_flag)->required();
    auto* eps = seq->add_subcommand("epsilon-iso", "counit verdicts per level");
    eps->add_option("--cochain", cochain_name);
    auto* tri = seq->add_subcommand("triangle", "triangle identities on samples");
    tri->add_option("--cochain", cochain_name);
    auto with_space = [&](auto&& fn) {
        rado::ProRado R;
        FiniteCochainSpace space(builtin_cochain(cochain_name, R, depth, width));
        fn(space);
    };
    quot->callback([&] {
        with_space([&](const FiniteCochainSpace& space) {
            emit(seq_quotient(space, level_flag, depth).to_json(), format);
        });
    });
    eps->callback([&] {
        with_space([&](const FiniteCochainSpace& space) {
            auto v = epsilon_is_iso(space, depth);
            emit(Json{{"iso_everywhere", v.iso_everywhere},
                      {"embedding_at", v.embedding_at},
                      {"iso_at", v.iso_at}},
                 format);
        });
    });
    tri->callback([&] {
        with_space([&](const FiniteCochainSpace& space) {
            std::vector<Branch> samples;
            for (Vertex v : space.cochain().reachable(0, depth))
                for (const auto& chain : chains_through(space, 0, v, depth, 8))
                    samples.emplace_back(&space, chain);
            auto rep = check_triangle_identities(space, samples, depth);
            emit(Json{{"lim_side", rep.lim_side},
                      {"seq_side", rep.seq_side},
                      {"samples", samples.size()},
                      {"detail", rep.detail}},
                 format);
        });
    });

    // -------------------------------------------------------------- rado --
    auto* rd = app.add_subcommand("rado", "explicit Rado constructions");
    auto* redge = rd->add_subcommand("edge", "standard edge rule");
    std::vector<std::string> edge_args;
    redge->add_option("vertices", edge_args, "N M")->expected(2);
    redge->callback([&] {
        auto n = BigNat::from_decimal(edge_args[0]);
        auto m = BigNat::from_decimal(edge_args[1]);
        emit(Json{{"edge", rado::std_edge(n, m)}}, format);
    });
    auto* wedge = rd->add_subcommand("word-edge", "word graph edge rule");
    std::vector<std::string> wedge_args;
    wedge->add_option("words", wedge_args, "V W")->expected(2);
    wedge->callback([&] {
        emit(Json{{"edge", rado::word_edge(rado::word_from_cli(wedge_args[0]),
                                           rado::word_from_cli(wedge_args[1]))}},
             format);
    });
    auto* romega = rd->add_subcommand("omega", "omega of a word");
    std::string omega_word_arg;
    romega->add_option("word", omega_word_arg)->required();
    romega->callback([&] {
        emit(Json{{"omega", rado::omega_word(rado::word_from_cli(omega_word_arg)).to_decimal()}},
             format);
    });
    auto* romegastd = rd->add_subcommand("omega-std", "the universal self-map");
    std::string omega_std_arg;
    romegastd->add_option("vertex", omega_std_arg)->required();
    romegastd->callback([&] {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        emit(Json{{"omega", vertex_json(R.omega_std(BigNat::from_decimal(omega_std_arg)))}},
             format);
    });
    auto* rpsi = rd->add_subcommand("psi", "canonical isomorphism into the word copy");
    std::string psi_arg;
    rpsi->add_option("vertex", psi_arg)->required();
    rpsi->callback([&] {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        const auto& w = R.psi(BigNat::from_decimal(psi_arg));
        emit(Json{{"word", rado::word_to_cli(w)}}, format);
    });
    auto* rwit = rd->add_subcommand("witness", "extension witness in the word graph");
    std::string adj_csv, nonadj_csv, target = "0";
    rwit->add_option("--adj", adj_csv, "comma list of words, e for the empty word");
    rwit->add_option("--nonadj", nonadj_csv);
    rwit->add_option("--target", target, "omega value of the witness");
    rwit->callback([&] {
        auto A = parse_word_list(adj_csv);
        auto B = parse_word_list(nonadj_csv);
        auto c = BigNat::from_decimal(target);
        auto recipe = rado::witness_recipe(A, B, c);
        Budget budget(budget_steps(budget_flag));
        auto least = rado::witness_search(A, B, c, budget);
        Json checks = Json::array();
        for (const auto& a : A)
            checks.push_back(Json{{"word", rado::word_to_cli(a)},
                                  {"adjacent", rado::word_edge(recipe, a)}});
        for (const auto& b : B)
            checks.push_back(Json{{"word", rado::word_to_cli(b)},
                                  {"adjacent", rado::word_edge(recipe, b)}});
        emit(Json{{"recipe", rado::word_to_cli(recipe)},
                  {"least", least ? Json(rado::word_to_cli(*least)) : Json(nullptr)},
                  {"omega", rado::omega_word(recipe).to_decimal()},
                  {"checks", checks}},
             format);
    });
    auto* rreal = rd->add_subcommand("realize", "one-point metric-graph extension");
    std::string realize_spec;
    rreal->add_option("--spec", realize_spec, "extension prescription JSON")->required();
    rreal->callback([&] {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        Json j = load_json(realize_spec);
        std::vector<rado::RBranch> existing;
        for (const auto& e : j.at("existing")) existing.push_back(parse_rbranch(R, e));
        rado::ExtensionSpec spec;
        for (const auto& e : j.at("agree_before")) spec.agree_before.push_back(e.get<std::uint32_t>());
        for (const auto& e : j.at("adjacent")) spec.adjacent.push_back(e.get<bool>());
        auto z = rado::verify_intro_extension(R, existing, spec, depth);
        Json dists = Json::array();
        for (const auto& x : existing)
            dists.push_back(level_to_json(distance(z, x, depth)));
        emit(Json{{"witness", rbranch_json(z, depth)}, {"distances", dists}}, format);
    });

    // -------------------------------------------------------------- game --
    auto* game = app.add_subcommand("game", "back-and-forth extension");
    auto* gext = game->add_subcommand("extend", "run the density-scheduled game");
    std::string pairs_file;
    int rounds = 4;
    gext->add_option("--pairs", pairs_file, "partial isomorphism JSON")->required();
    gext->add_option("--rounds", rounds);
    gext->callback([&] {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        auto start = parse_pairs(R, load_json(pairs_file), depth);
        auto table = dynamics::bf_extend(R, R, start, rounds, depth);
        Json out = Json::array();
        for (const auto& [a, b] : table.table.pairs)
            out.push_back(Json{{"a", rbranch_json(a, depth)}, {"b", rbranch_json(b, depth)}});
        emit(Json{{"pairs", out}, {"rounds", rounds}, {"depth", depth}}, format);
    });

    // ------------------------------------------------------------- shift --
    auto* shift = app.add_subcommand("shift", "shift operators and conjugation");
    auto* slevel = shift->add_subcommand("level", "metrisation level of a finite iso");
    slevel->add_option("--pairs", pairs_file)->required();
    slevel->callback([&] {
        rado::ProRado R;
        auto alpha = parse_pairs(R, load_json(pairs_file), depth);
        emit(Json{{"level", dynamics::shift_level(alpha)}}, format);
    });
    auto* sconj = shift->add_subcommand("conjugate", "Theorem-style conjugated extension");
    int samples = 20;
    sconj->add_option("--pairs", pairs_file)->required();
    sconj->add_option("--samples", samples);
    sconj->add_option("--rounds", rounds);
    sconj->callback([&] {
        rado::ProRado R;
        R.set_budget_steps(budget_steps(budget_flag));
        auto alpha = parse_pairs(R, load_json(pairs_file), depth);
        auto conj = dynamics::conjugate_extend(R, alpha, depth, rounds, samples, seed);
        emit(Json{{"l", conj.l},
                  {"seed", seed},
                  {"extends_alpha", conj.certificate.extends_alpha},
                  {"distances_exact", conj.certificate.distances_exact},
                  {"adjacency_preserved", conj.certificate.adjacency_preserved},
                  {"samples", conj.certificate.samples},
                  {"records", conj.certificate.records}},
             format);
    });

    // ------------------------------------------------------------- order --
    auto* order = app.add_subcommand("order", "the ordered lexicographic tower");
    auto* ovalue = order->add_subcommand("value", "multivalued order predicate");
    std::string x_csv, y_csv;
    ovalue->add_option("--x", x_csv, "comma list of rationals")->required();
    ovalue->add_option("--y", y_csv)->required();
    ovalue->callback([&] {
        linorder::LexSpace space;
        auto parse_coords = [](const std::string& csv) {
            std::vector<linorder::Rational> out;
            std::string cur;
            for (char ch : csv + ",") {
                if (ch == ',') {
                    if (!cur.empty()) out.push_back(linorder::Rational::parse(cur));
                    cur.clear();
                } else if (!isspace(static_cast<unsigned char>(ch))) {
                    cur.push_back(ch);
                }
            }
            return out;
        };
        auto x = linorder::lex_branch(space, parse_coords(x_csv));
        auto y = linorder::lex_branch(space, parse_coords(y_csv));
        emit(Json{{"value", level_to_json(linorder::order_value(x, y, depth))},
                  {"distance", level_to_json(distance(x, y, depth))}},
             format);
    });
    auto* owit = order->add_subcommand("witness", "canonical dense witness");
    std::string lo_str, hi_str;
    owit->add_option("--lo", lo_str)->required();
    owit->add_option("--hi", hi_str)->required();
    owit->callback([&] {
        auto w = linorder::dense_witness(linorder::Rational::parse(lo_str),
                                         linorder::Rational::parse(hi_str));
        emit(Json{{"witness", w.to_string()}}, format);
    });

    // global flags may follow the subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands({})) enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // unknown verb or malformed flags: usage + exit 1
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    }
    return g_exit;
}
