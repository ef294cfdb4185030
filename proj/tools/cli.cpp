#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "freedep/closure.hpp"
#include "freedep/dependence.hpp"
#include "freedep/equations.hpp"
#include "freedep/errors.hpp"
#include "freedep/stallings.hpp"

namespace freedep::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Alphabet inferred_alphabet(const std::vector<Word>& gens) {
  std::vector<int> letters;
  for (const Word& w : gens) {
    for (int g : w.generators()) letters.push_back(g);
  }
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  return Alphabet::from_generators(std::move(letters));
}

std::string spaced(const Alphabet& a) {
  std::string out;
  for (char c : a.to_string()) {
    if (!out.empty()) out += ' ';
    out += c;
  }
  return out;
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find(' ') == std::string::npos) return s;
  return "\"" + s + "\"";
}

std::string w2s(const Word& w) { return w.to_compact_string(); }

std::string join(const std::vector<Word>& words, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? sep : "") + w2s(words[i]);
  return out;
}

// One record per line: a record type followed by key=value fields.
class Output {
 public:
  Output(std::ostream& out, bool kv) : out_(out), kv_(kv) {}
  bool kv() const { return kv_; }

  void text(const std::string& line) {
    if (!kv_) out_ << line << '\n';
  }
  void record(const std::string& type, const std::vector<std::pair<std::string, std::string>>& fields) {
    if (!kv_) return;
    out_ << type;
    for (const auto& [k, v] : fields) out_ << ' ' << k << '=' << quote(v);
    out_ << '\n';
  }
  void raw(const std::string& s) { out_ << s; }

 private:
  std::ostream& out_;
  bool kv_;
};

void emit_generators(Output& o, const Alphabet& alphabet, const std::vector<Word>& gens) {
  o.text("#alphabet: " + spaced(alphabet));
  o.record("alphabet", {{"value", alphabet.to_string()}});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    o.text(w2s(gens[i]));
    o.record("generator", {{"index", std::to_string(i + 1)}, {"word", w2s(gens[i])}});
  }
}

void emit_report(Output& o, const OracleReport& r) {
  o.text(r.to_string());
  o.record("oracle", {{"holds", r.holds ? "true" : "false"},
                      {"witness", r.witness ? w2s(*r.witness) : "none"},
                      {"bound", std::to_string(r.length_bound)},
                      {"exponent_bound", std::to_string(r.exponent_bound)},
                      {"checked", std::to_string(r.candidates_checked)}});
}

void emit_equation(Output& o, const Equation& eq) {
  o.text(eq.to_string());
  o.record("equation", {{"coefficient", eq.to_string()}, {"degree", std::to_string(eq.degree())}});
}

void emit_bool(Output& o, const std::string& type, bool value) {
  o.text(value ? "true" : "false");
  o.record(type, {{"value", value ? "true" : "false"}});
}

struct Loaded {
  SubgroupInput input;
  CoreGraph graph;
};

Loaded load_graph(const std::string& arg) {
  Loaded l;
  l.input = load_subgroup(arg);
  l.graph = build_core(l.input.gens, l.input.alphabet);
  return l;
}

}  // namespace

SubgroupInput parse_subgroup_text(std::string_view text, const std::string& source) {
  SubgroupInput in;
  std::optional<Alphabet> header;
  std::size_t line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string raw;
  auto fail = [&](const std::string& what) -> InputError {
    return InputError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.rfind("#alphabet:", 0) == 0) {
      if (header) throw fail("repeated #alphabet header");
      try {
        header = Alphabet(line.substr(10));
      } catch (const InputError& e) {
        throw fail(e.what());
      }
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    try {
      in.gens.push_back(header ? Word::parse(line, *header) : Word::parse(line));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
  }
  in.alphabet = header ? *header : inferred_alphabet(in.gens);
  return in;
}

SubgroupInput parse_subgroup_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open subgroup file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_subgroup_text(buffer.str(), path);
}

SubgroupInput load_subgroup(const std::string& arg) {
  constexpr std::string_view kInline = "gens:";
  if (arg.rfind(kInline, 0) != 0) return parse_subgroup_file(arg);
  std::string text = arg.substr(kInline.size());
  std::replace(text.begin(), text.end(), ',', '\n');
  return parse_subgroup_text(text, "<inline>");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependence, closure and equations over subgroups of free groups"};
  app.name("freedep");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  bool no_reduce = false;
  app.add_option("--format", format, "Output format: text or kv (key=value records)")
      ->check(CLI::IsMember({"text", "kv"}));
  app.add_flag("--no-reduce", no_reduce, "Keep every vertex pair instead of one per neighbor class");

  std::string h_arg, g_arg, word_arg, eq_arg, h1_arg, h2_arg, order_arg, in_arg;
  std::size_t bound = 0, exponent = 4;
  bool witness = false, dot = false;

  std::vector<std::pair<CLI::App*, std::function<void(Output&)>>> verbs;
  auto verb = [&](const char* name, const char* help, std::function<void(Output&)> body) {
    CLI::App* sub = app.add_subcommand(name, help);
    verbs.emplace_back(sub, std::move(body));
    return sub;
  };
  auto subgroup = [&](CLI::App* sub) {
    sub->add_option("subgroup", h_arg, "Subgroup file, or gens:w1,w2,...")->required();
  };
  auto options = [&] { return PairSetOptions{!no_reduce}; };

  subgroup(verb("rank", "Rank of the subgroup", [&](Output& o) {
    const std::size_t r = rank(load_graph(h_arg).graph);
    o.text(std::to_string(r));
    o.record("rank", {{"value", std::to_string(r)}});
  }));

  {
    CLI::App* sub = verb("member", "Membership of a word in the subgroup", [&](Output& o) {
      const bool m = contains(load_graph(h_arg).graph, Word::parse(word_arg));
      o.text(m ? "true" : "false");
      o.record("member", {{"word", w2s(Word::parse(word_arg))}, {"value", m ? "true" : "false"}});
    });
    subgroup(sub);
    sub->add_option("word", word_arg, "Word to test")->required();
  }

  subgroup(verb("basis", "Free basis read off the core graph", [&](Output& o) {
    const Loaded l = load_graph(h_arg);
    emit_generators(o, l.input.alphabet, basis(l.graph));
  }));

  {
    CLI::App* sub = verb("depq", "Does the element depend on the subgroup", [&](Output& o) {
      const Loaded l = load_graph(h_arg);
      const Word g = Word::parse(word_arg);
      const DependenceWitness w = is_dependent(l.graph, g);
      const char* verdict = w.verdict ? "dependent" : "independent";
      o.text(verdict);
      if (witness) {
        o.text("g1 " + w2s(w.g1));
        o.text("g2 " + (w.g2 ? w2s(*w.g2) : std::string("none")));
        if (w.pair) o.text("pair " + w2s(w.pair->u_label) + " " + w2s(w.pair->v_label));
        o.text("rank " + std::to_string(w.rank_before) + " -> " + std::to_string(w.rank_after));
      }
      o.record("dependence", {{"word", w2s(g)},
                              {"verdict", verdict},
                              {"g1", w2s(w.g1)},
                              {"g2", w.g2 ? w2s(*w.g2) : "none"},
                              {"u", w.pair ? w2s(w.pair->u_label) : "none"},
                              {"v", w.pair ? w2s(w.pair->v_label) : "none"},
                              {"rank_before", std::to_string(w.rank_before)},
                              {"rank_after", std::to_string(w.rank_after)}});
    });
    subgroup(sub);
    sub->add_option("word", word_arg, "Element g")->required();
    sub->add_flag("--witness", witness, "Also print the decomposition g = g1 g2^-1 and the pair");
  }

  subgroup(verb("dep-cosets", "Double coset representatives of dep(H)", [&](Output& o) {
    const DoubleCosetDecomposition d = dep_double_cosets(load_graph(h_arg).graph, options());
    for (std::size_t i = 0; i < d.representatives.size(); ++i) {
      o.text("H " + w2s(d.representatives[i]) + " H");
      o.record("coset", {{"index", std::to_string(i + 1)}, {"representative", w2s(d.representatives[i])}});
    }
  }));

  subgroup(verb("dep-gens", "Generators of Dep(H)", [&](Output& o) {
    const Loaded l = load_graph(h_arg);
    emit_generators(o, l.input.alphabet, dep_generators(l.graph, options()));
  }));

  {
    CLI::App* sub = verb("closure", "Dependence closure chain and length", [&](Output& o) {
      const ClosureResult c = dependence_closure(load_graph(h_arg).graph, options());
      if (dot) {
        for (std::size_t i = 0; i < c.chain.size(); ++i) o.raw(to_dot(c.chain[i], "chain" + std::to_string(i)));
        return;
      }
      o.text("length " + std::to_string(c.length));
      o.record("closure", {{"length", std::to_string(c.length)}});
      for (std::size_t i = 0; i < c.chain.size(); ++i) {
        const std::vector<Word> b = basis(c.chain[i]);
        o.text("chain " + std::to_string(i) + " rank " + std::to_string(b.size()) + ": " + join(b, " "));
        o.record("chain", {{"index", std::to_string(i)},
                           {"rank", std::to_string(b.size())},
                           {"basis", join(b, ",")}});
      }
    });
    subgroup(sub);
    sub->add_flag("--dot", dot, "Print every chain member as a DOT graph instead");
  }

  {
    CLI::App* sub = verb("closed", "Is H dependence-closed (absolutely, or within G up to a bound)", [&](Output& o) {
      const Loaded l = load_graph(h_arg);
      if (in_arg.empty()) {
        emit_bool(o, "closed", dep_subgroup(l.graph, options()) == l.graph);
        return;
      }
      emit_report(o, is_dependence_closed_in(l.graph, load_graph(in_arg).graph, bound ? bound : 6));
    });
    subgroup(sub);
    sub->add_option("--in", in_arg, "Ambient subgroup G for the relative notion");
    sub->add_option("--bound", bound, "Word length bound for the relative search (default 6)");
  }

  {
    CLI::App* sub = verb("echelon", "Echelon form test", [&](Output& o) {
      const Loaded l = load_graph(h_arg);
      const EchelonReport r = order_arg.empty() ? is_echelon(l.graph) : is_echelon(l.graph, Alphabet(order_arg));
      std::string ranks;
      for (std::size_t i = 0; i < r.ranks.size(); ++i) ranks += (i ? " " : "") + std::to_string(r.ranks[i]);
      o.text(std::string(r.echelon ? "true" : "false") + " ranks " + ranks);
      std::replace(ranks.begin(), ranks.end(), ' ', ',');
      o.record("echelon", {{"value", r.echelon ? "true" : "false"}, {"ranks", ranks}});
    });
    subgroup(sub);
    sub->add_option("--order", order_arg, "Ordered basis, e.g. \"b a\" (default: the subgroup alphabet)");
  }

  {
    CLI::App* sub = verb("intersect", "Basis of the intersection of two subgroups", [&](Output& o) {
      const CoreGraph p = pullback(load_graph(h_arg).graph, load_graph(g_arg).graph);
      emit_generators(o, p.alphabet(), basis(p));
    });
    subgroup(sub);
    sub->add_option("other", g_arg, "Second subgroup")->required();
  }

  {
    CLI::App* sub = verb("eq-basis", "Normal basis of the equations over H solved by g", [&](Output& o) {
      const EquationBasis b = equation_basis(load_graph(h_arg).graph, Word::parse(word_arg));
      for (std::size_t i = 0; i < b.generators.size(); ++i) {
        o.text("g" + std::to_string(i + 1) + " = " + w2s(b.generators[i]));
        o.record("generator", {{"index", std::to_string(i + 1)}, {"word", w2s(b.generators[i])}});
      }
      for (const FormalWord& w : b.equations) {
        const Equation eq = to_coefficient_form(w, b.generators);
        o.text(w.to_string() + " : " + eq.to_string());
        o.record("equation", {{"formal", w.to_string()},
                              {"coefficient", eq.to_string()},
                              {"degree", std::to_string(eq.degree())}});
      }
    });
    subgroup(sub);
    sub->add_option("word", word_arg, "Dependent element g")->required();
  }

  {
    CLI::App* sub = verb("eq-fold", "Equation read off the folding that absorbs g", [&](Output& o) {
      emit_equation(o, equation_from_folding(load_graph(h_arg).graph, Word::parse(word_arg)));
    });
    subgroup(sub);
    sub->add_option("word", word_arg, "Dependent element g")->required();
  }

  {
    CLI::App* sub = verb("eq-verify", "Does g solve the equation", [&](Output& o) {
      emit_bool(o, "verify", verify(Equation::parse(eq_arg), Word::parse(word_arg)));
    });
    sub->add_option("equation", eq_arg, "Equation such as \"a^2 x^-2 = 1\"")->required();
    sub->add_option("word", word_arg, "Candidate solution g")->required();
  }

  {
    CLI::App* sub = verb("transport", "Rewrite w(x) as w(h1^-1 x h2)", [&](Output& o) {
      const CoreGraph h = load_graph(h_arg).graph;
      emit_equation(o, transport(Equation::parse(eq_arg), h, Word::parse(h1_arg), Word::parse(h2_arg)));
    });
    subgroup(sub);
    sub->add_option("equation", eq_arg, "Equation over H")->required();
    sub->add_option("h1", h1_arg, "Left element of H")->required();
    sub->add_option("h2", h2_arg, "Right element of H")->required();
  }

  subgroup(verb("degree-bound", "Degree bound for equations of dependent elements", [&](Output& o) {
    const DegreeBound d = degree_bound(load_graph(h_arg).graph);
    o.text(std::to_string(d.bound));
    o.record("bound", {{"value", std::to_string(d.bound)}});
    for (const auto& [rep, eq] : d.per_representative) {
      o.text("H " + w2s(rep) + " H: " + eq.to_string());
      o.record("representative", {{"word", w2s(rep)},
                                  {"equation", eq.to_string()},
                                  {"degree", std::to_string(eq.degree())}});
    }
  }));

  {
    CLI::App* sub = verb("oracle-pure", "Bounded search for a root of an element of H outside H", [&](Output& o) {
      emit_report(o, is_pure(load_graph(h_arg).graph, bound ? bound : 4, exponent));
    });
    subgroup(sub);
    sub->add_option("--bound", bound, "Word length bound (default 4)");
    sub->add_option("--exponent", exponent, "Largest exponent tried (default 4)");
  }

  {
    CLI::App* sub = verb("oracle-malnormal", "Bounded search for g outside H with H^g meeting H", [&](Output& o) {
      emit_report(o, is_malnormal(load_graph(h_arg).graph, bound ? bound : 3));
    });
    subgroup(sub);
    sub->add_option("--bound", bound, "Word length bound (default 3)");
  }

  subgroup(verb("dot", "Core graph in Graphviz DOT", [&](Output& o) {
    o.raw(to_dot(load_graph(h_arg).graph));
  }));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Output o(out, format == "kv");
  try {
    for (auto& [sub, body] : verbs) {
      if (sub->parsed()) body(o);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace freedep::cli
