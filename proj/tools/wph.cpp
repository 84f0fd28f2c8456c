#include "wph/io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kMaxDimCap = 6;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  Result(std::string t, int c = kOk) : text(std::move(t)), code(c) {}
  std::string text;
  int code;
};

struct Config {
  std::vector<std::string> inputs;
  std::string ring = "z";
  int max_dim = 3;
  bool reduced = false;
  bool barcode = false;
  bool relabel = false;
  std::string format = "text";
  std::string complex = "omega";
  std::string output;

  wph::Ring ring_tag() const { return ring == "q" ? wph::Ring::Rationals : wph::Ring::Integers; }
  bool json() const { return format == "json"; }
};

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

template <class Parse>
auto load(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return parse(in);
  } catch (const wph::ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  } catch (const wph::Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

wph::WeightedDigraph load_digraph(const std::string& path) {
  if (extension(path) == ".json")
    return load(path, [](std::istream& in) {
      wph::Json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw wph::Error(std::string("malformed JSON: ") + e.what());
      }
      return wph::digraph_from_json(j);
    });
  return load(path, [](std::istream& in) { return wph::parse_digraph(in); });
}

wph::WeightedDigraph valid_digraph(const std::string& path, wph::Ring ring) {
  auto g = load_digraph(path);
  auto v = wph::validate_digraph(g, ring);
  if (!v.empty()) throw InputError(path + ": " + wph::InvalidDigraph::join_messages(v));
  return g;
}

wph::DigraphMorphism load_morphism(const Config& c) {
  if (c.inputs.size() != 3) throw UsageError("expected <source.wdg> <target.wdg> <map.wmap>");
  auto src = valid_digraph(c.inputs[0], c.ring_tag());
  auto tgt = valid_digraph(c.inputs[1], c.ring_tag());
  auto map = load(c.inputs[2], [](std::istream& in) { return wph::parse_vertex_map(in); });
  return {std::move(src), std::move(tgt), std::move(map)};
}

std::string dump(const wph::Json& j) { return j.dump(2) + "\n"; }

void need_inputs(const Config& c, std::size_t n, const std::string& shape) {
  if (c.inputs.size() != n) throw UsageError("expected " + shape);
}

Result cmd_homology(const Config& c) {
  need_inputs(c, 1, "<graph.wdg>");
  auto g = valid_digraph(c.inputs[0], c.ring_tag());
  auto kind = c.complex == "gamma" ? wph::ComplexKind::Gamma : wph::ComplexKind::Omega;
  auto r = wph::homology(g, c.ring_tag(), c.max_dim, kind, c.reduced);
  return c.json() ? dump(wph::to_json(r, g)) : wph::format_homology(r, g);
}

Result cmd_omega(const Config& c) {
  need_inputs(c, 1, "<graph.wdg>");
  auto g = valid_digraph(c.inputs[0], c.ring_tag());
  auto kind = c.complex == "gamma" ? wph::ComplexKind::Gamma : wph::ComplexKind::Omega;
  const char* name = kind == wph::ComplexKind::Gamma ? "Gamma" : "Omega";
  wph::Json degrees = wph::Json::array();
  std::string text;
  auto run = [&]<wph::Scalar T>() {
    for (int p = 0; p <= c.max_dim; ++p) {
      auto b = kind == wph::ComplexKind::Gamma ? wph::gamma_basis<T>(g, p) : wph::omega_basis<T>(g, p);
      wph::Json basis = wph::Json::array();
      text += std::string(name) + "_" + std::to_string(p) + ": rank " + std::to_string(b.rank()) + "\n";
      for (std::size_t k = 0; k < b.rank(); ++k) {
        auto chain = b.chain(k);
        basis.push_back(wph::to_json(chain, g));
        text += "  " + wph::format_chain(chain, g) + "\n";
      }
      degrees.push_back({{"degree", p}, {"rank", b.rank()}, {"basis", basis}});
    }
  };
  if (c.ring_tag() == wph::Ring::Integers) run.template operator()<wph::Integer>();
  else run.template operator()<wph::Rational>();
  if (c.json()) return dump({{"ring", wph::ring_name(c.ring_tag())}, {"complex", wph::complex_name(kind)}, {"degrees", degrees}});
  return text;
}

Result cmd_persist(const Config& c) {
  need_inputs(c, 1, "<filtration.wfl>");
  if (c.barcode && c.ring_tag() != wph::Ring::Rationals) throw UsageError("--barcode requires --ring q");
  auto f = load(c.inputs[0], [](std::istream& in) { return wph::parse_filtration(in); });
  auto v = wph::validate_filtration(f, c.ring_tag());
  if (!v.empty()) throw InputError(c.inputs[0] + ": " + wph::InvalidDigraph::join_messages(v));
  if (c.ring_tag() == wph::Ring::Rationals) {
    auto b = wph::barcode(f, c.ring_tag(), c.max_dim);
    return c.json() ? dump(wph::to_json(b)) : wph::format_barcode(b);
  }
  auto r = wph::persistence_module(f, c.ring_tag(), c.max_dim);
  return c.json() ? dump(wph::to_json(r)) : wph::format_persistence(r);
}

Result cmd_induced(const Config& c) {
  auto f = load_morphism(c);
  auto v = wph::validate_morphism(f);
  if (!v.empty()) throw InputError(c.inputs[2] + ": " + wph::InvalidDigraph::join_messages(v));
  auto m = wph::induced_map(f, c.ring_tag(), c.max_dim, c.reduced);
  return c.json() ? dump(wph::to_json(m)) : wph::format_induced(m);
}

std::pair<wph::WeightedDigraph, wph::WeightedDigraph> load_pair(const Config& c) {
  need_inputs(c, 2, "<a.wdg> <b.wdg>");
  auto g = valid_digraph(c.inputs[0], c.ring_tag());
  auto h = valid_digraph(c.inputs[1], c.ring_tag());
  auto shared = wph::shared_ids(g, h);
  if (!shared.empty() && !c.relabel)
    throw InputError("vertex ids collide (use --relabel): " + wph::InvalidDigraph::join_messages(shared));
  return {std::move(g), std::move(h)};
}

Result cmd_join(const Config& c) {
  auto [g, h] = load_pair(c);
  bool relabeled = false;
  auto [a, b] = wph::disjoint_pair(g, h, c.relabel, relabeled);
  auto j = wph::join(a, b);
  return c.json() ? dump(wph::to_json(j)) : wph::format_digraph(j);
}

Result cmd_kunneth(const Config& c) {
  auto [g, h] = load_pair(c);
  auto r = wph::kunneth_check(g, h, c.ring_tag(), c.max_dim, c.relabel);
  return c.json() ? dump(wph::to_json(r)) : wph::format_kunneth(r);
}

Result cmd_validate(const Config& c) {
  std::vector<std::string> violations;
  if (c.inputs.size() == 3 && extension(c.inputs[2]) == ".wmap") {
    auto src = load_digraph(c.inputs[0]);
    auto tgt = load_digraph(c.inputs[1]);
    for (const auto* g : {&src, &tgt})
      for (const auto& v : wph::validate_digraph(*g, c.ring_tag())) violations.push_back(v);
    if (violations.empty()) {
      auto map = load(c.inputs[2], [](std::istream& in) { return wph::parse_vertex_map(in); });
      violations = wph::validate_morphism({std::move(src), std::move(tgt), std::move(map)});
    }
  } else if (c.inputs.size() == 1 && extension(c.inputs[0]) == ".wfl") {
    auto f = load(c.inputs[0], [](std::istream& in) { return wph::parse_filtration(in); });
    violations = wph::validate_filtration(f, c.ring_tag());
  } else if (c.inputs.size() == 1) {
    violations = wph::validate_digraph(load_digraph(c.inputs[0]), c.ring_tag());
  } else {
    throw UsageError("expected <graph.wdg>, <filtration.wfl> or <source.wdg> <target.wdg> <map.wmap>");
  }
  const int code = violations.empty() ? kOk : kInput;
  if (c.json()) return {dump({{"valid", violations.empty()}, {"violations", violations}}), code};
  std::string text;
  for (const auto& v : violations) text += v + "\n";
  return {violations.empty() ? "ok\n" : text, code};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted path homology of digraphs"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool barcode_flag) {
    sub->add_option("inputs", cfg.inputs, "Input files")->required();
    sub->add_option("--ring", cfg.ring, "Coefficient ring")->check(CLI::IsMember({"z", "q"}));
    sub->add_option("--max-dim", cfg.max_dim, "Highest degree")->check(CLI::Range(0, kMaxDimCap));
    sub->add_flag("--reduced", cfg.reduced, "Keep the augmentation to degree -1");
    sub->add_flag("--relabel", cfg.relabel, "Prefix colliding vertex ids with L. and R.");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o", cfg.output, "Output path");
    if (barcode_flag) sub->add_flag("--barcode", cfg.barcode, "Barcode over Q");
  };

  std::map<std::string, Result (*)(const Config&)> commands = {
      {"homology", cmd_homology}, {"omega", cmd_omega}, {"persist", cmd_persist}, {"induced", cmd_induced},
      {"join", cmd_join},         {"kunneth", cmd_kunneth}, {"validate", cmd_validate}};
  std::map<std::string, std::string> help = {
      {"homology", "Homology groups of a weighted digraph"},
      {"omega", "Bases of the invariant path modules"},
      {"persist", "Persistence of a filtration"},
      {"induced", "Induced map of a morphism on homology"},
      {"join", "Join of two weighted digraphs"},
      {"kunneth", "Kunneth check for a join"},
      {"validate", "Validate a digraph, filtration or morphism"}};
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name, help[name]);
    add_common(sub, name == "persist");
    if (name == "homology" || name == "omega")
      sub->add_option("--complex", cfg.complex, "Complex")->check(CLI::IsMember({"omega", "gamma"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const auto& name = app.get_subcommands().front()->get_name();
  try {
    auto result = commands.at(name)(cfg);
    if (cfg.output.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream file(cfg.output);
      if (!file) throw InputError("cannot write " + cfg.output);
      file << result.text;
    }
    return result.code;
  } catch (const UsageError& e) {
    std::cerr << "wph " << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "wph " << name << ": " << e.what() << "\n";
    return kInput;
  } catch (const wph::WrongRing& e) {
    std::cerr << "wph " << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const wph::CertificateFailure& e) {
    std::cerr << "wph " << name << ": internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const wph::Error& e) {
    std::cerr << "wph " << name << ": " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "wph " << name << ": internal error: " << e.what() << "\n";
    return kInternal;
  }
}
