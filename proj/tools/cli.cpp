#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "cellricci/builders.hpp"
#include "cellricci/complex_io.hpp"
#include "cellricci/errors.hpp"
#include "cellricci/face_graph.hpp"
#include "cellricci/forman.hpp"
#include "cellricci/forms.hpp"
#include "cellricci/lly.hpp"
#include "cellricci/parallel.hpp"
#include "cellricci/spectral.hpp"
#include "cellricci/transport.hpp"

namespace cellricci::cli {

namespace {

constexpr const char* kColumns = R"(TSV columns:
  forman     tau sigma ric d_tau d_sigma n_tau n_sigma n2
  lly        tau sigma kappa kappa_decimal
  lly -a     tau sigma alpha kappa_alpha kappa_alpha_decimal
  compare    tau sigma ric kappa_formula kappa_lp match
  transport  W <p/q> <decimal>, then source target mass_num mass_den
Rationals print as p/q, decimals with 12 fractional digits.
Exit codes: 0 pass, 1 assertion failure, 2 input error.)";

struct Options {
  std::string input;
  std::string gen;
  std::string format = "tsv";
  bool header = false;
  unsigned jobs = 1;
  double eps = 1e-9;
  std::string alpha;
  std::string from;
  std::string to;
  bool explicit_coupling = false;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> gen_tokens;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() {
  if (const char* env = std::getenv("CELLRICCI_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fixed(double x) {
  if (std::fabs(x) < 5e-13) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out, const Options& opt) const {
    if (opt.format == "text") {
      std::vector<std::size_t> width(header_.size());
      for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
      }
      auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) {
          s += r[i];
          if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << s << '\n';
      };
      line(header_);
      for (const auto& r : rows_) line(r);
      return;
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
      out << '\n';
    };
    if (opt.header) line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CellComplex generate_at(const std::vector<std::string>& t, std::size_t& pos);

int integer_at(const std::vector<std::string>& t, std::size_t& pos, const std::string& what) {
  if (pos >= t.size()) throw ComplexError("generator: missing " + what);
  try {
    std::size_t used = 0;
    const int v = std::stoi(t[pos], &used);
    if (used != t[pos].size()) throw std::invalid_argument(t[pos]);
    ++pos;
    return v;
  } catch (const std::logic_error&) {
    throw ComplexError("generator: expected integer " + what + ", got '" + t[pos] + "'");
  }
}

bool is_integer_token(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

CellComplex generate_at(const std::vector<std::string>& t, std::size_t& pos) {
  if (pos >= t.size()) throw ComplexError("generator: empty spec");
  const std::string kind = t[pos++];
  if (kind == "simplex-boundary") return build_simplex_boundary(integer_at(t, pos, "n"));
  if (kind == "cycle") return build_cycle(integer_at(t, pos, "k"));
  if (kind == "point") return build_point();
  if (kind == "torus") {
    const int k1 = integer_at(t, pos, "k1");
    const int k2 = integer_at(t, pos, "k2");
    return build_torus_grid(k1, k2);
  }
  if (kind == "grid") {
    std::vector<int> lengths;
    while (pos < t.size() && is_integer_token(t[pos])) lengths.push_back(integer_at(t, pos, "length"));
    return build_interval_grid(lengths);
  }
  if (kind == "product") {
    const auto a = generate_at(t, pos);
    const auto b = generate_at(t, pos);
    return product(a, b);
  }
  throw ComplexError("generator: unknown kind '" + kind + "'");
}

CellComplex load(const Options& opt, std::istream& in) {
  if (!opt.input.empty() && !opt.gen.empty()) throw InputError("give either --input or --gen, not both");
  if (!opt.gen.empty()) return generate(opt.gen);
  if (!opt.input.empty()) {
    std::ifstream file(opt.input);
    if (!file) throw InputError("cannot open " + opt.input);
    return read_complex(file);
  }
  return read_complex(in);
}

int cmd_gen(const Options& opt, std::ostream& out) {
  write_complex(out, generate(opt.gen_tokens));
  return kPass;
}

int cmd_validate(const CellComplex& c, std::ostream& out) {
  const auto report = validate(c);
  bool ok = true;
  for (const auto& check : report.checks) {
    ok = ok && check.passed;
    out << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (!check.passed) out << ": " << check.violations.size() << " violation(s)";
    out << '\n';
    for (const auto& v : check.violations) out << "  " << v << '\n';
  }
  if (report.ok()) {
    try {
      curvature_records(c);
      out << "PASS counting-identity\n";
    } catch (const StructuralError& e) {
      ok = false;
      out << "FAIL counting-identity\n  " << e.what() << '\n';
    }
  } else {
    out << "SKIP counting-identity: structural checks failed\n";
  }
  return ok ? kPass : kAssertionFailure;
}

int cmd_forman(const CellComplex& c, const Options& opt, std::ostream& out) {
  Table t({"tau", "sigma", "ric", "d_tau", "d_sigma", "n_tau", "n_sigma", "n2"});
  for (const auto& r : require_curvature_ready(c, opt.jobs)) {
    t.add({c.label(r.vector.tau), c.label(r.vector.sigma), std::to_string(r.ric), std::to_string(r.d_tau),
           std::to_string(r.d_sigma), std::to_string(r.n_tau), std::to_string(r.n_sigma), std::to_string(r.n2)});
  }
  t.print(out, opt);
  return kPass;
}

std::optional<Rational> parse_alpha(const Options& opt) {
  if (opt.alpha.empty()) return std::nullopt;
  try {
    return Rational::parse(opt.alpha);
  } catch (const std::exception& e) {
    throw InputError("--alpha: " + std::string(e.what()));
  }
}

int cmd_lly(const CellComplex& c, const Options& opt, std::ostream& out) {
  require_curvature_ready(c, opt.jobs);
  const FaceGraph g(c);
  const auto alpha = parse_alpha(opt);
  if (alpha && (*alpha < Rational(0) || *alpha >= Rational(1))) throw InputError("--alpha must lie in [0, 1)");
  const auto vectors = c.vectors();
  std::vector<Rational> values(vectors.size());
  parallel_for(vectors.size(), opt.jobs, [&](std::size_t i) {
    values[i] = alpha ? alpha_ricci(g, vectors[i].tau, vectors[i].sigma, *alpha) : lly_ricci(g, vectors[i]);
  });
  Table t(alpha ? std::vector<std::string>{"tau", "sigma", "alpha", "kappa_alpha", "kappa_alpha_decimal"}
                : std::vector<std::string>{"tau", "sigma", "kappa", "kappa_decimal"});
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<std::string> row{c.label(vectors[i].tau), c.label(vectors[i].sigma)};
    if (alpha) row.push_back(alpha->str());
    row.push_back(values[i].str());
    row.push_back(values[i].decimal(12));
    t.add(std::move(row));
  }
  t.print(out, opt);
  return kPass;
}

int cmd_compare(const CellComplex& c, const Options& opt, std::ostream& out) {
  const FaceGraph g(c);
  const auto check = verify_closed_form(g, opt.jobs);
  Table t({"tau", "sigma", "ric", "kappa_formula", "kappa_lp", "match"});
  for (const auto& r : check.records) {
    t.add({c.label(r.vector.tau), c.label(r.vector.sigma), std::to_string(ric(c, r.vector)), r.formula_value.str(),
           r.kappa.str(), r.matches() ? "yes" : "no"});
  }
  t.print(out, opt);
  return check.ok() ? kPass : kAssertionFailure;
}

CellId cell_option(const CellComplex& c, const std::string& label, const char* flag) {
  if (label.empty()) throw InputError(std::string(flag) + " is required");
  const auto id = c.find(label);
  if (!id) throw InputError(std::string(flag) + ": unknown cell '" + label + "'");
  return *id;
}

int cmd_transport(const CellComplex& c, const Options& opt, std::ostream& out) {
  const FaceGraph g(c);
  const CellId a = cell_option(c, opt.from, "--from");
  const CellId b = cell_option(c, opt.to, "--to");
  const Rational alpha = parse_alpha(opt).value_or(Rational(1, 2));
  const auto cert = wasserstein(g, measure_alpha(g, a, alpha), measure_alpha(g, b, alpha));
  const char* sep = opt.format == "text" ? " " : "\t";
  out << "W" << sep << cert.value.str() << sep << cert.value.decimal(12) << '\n';
  Table t({"source", "target", "mass_num", "mass_den"});
  for (const auto& f : cert.optimal_coupling.flow) {
    t.add({c.label(f.source), c.label(f.target), std::to_string(f.mass.num()), std::to_string(f.mass.den())});
  }
  t.print(out, opt);
  if (!opt.explicit_coupling) return kPass;

  const FaceVector v{a, b};
  if (!c.contains(v)) throw InputError("--explicit needs --from > --to to be a vector");
  require_curvature_ready(c, opt.jobs);
  const auto pc = explicit_coupling(g, v, alpha);
  const auto witness = integer_dual_witness(g, v);
  const Rational cost = pc.coupling.cost(g);
  const Rational dual = witness.dual_value(g, v, alpha);
  out << "explicit_table" << sep << coupling_table_name(pc.table) << '\n';
  out << "min_alpha" << sep << (pc.min_alpha ? pc.min_alpha->str() : "none") << '\n';
  out << "explicit_cost" << sep << cost.str() << sep << cost.decimal(12) << '\n';
  out << "witness" << sep << (witness.uses_g ? "g" : "f") << sep
      << (witness.raw_lipschitz ? "raw-lipschitz" : "extended-only") << '\n';
  out << "dual_value" << sep << dual.str() << sep << dual.decimal(12) << '\n';
  const bool sandwich = dual == cert.value && cert.value == cost;
  out << (sandwich ? "PASS" : "FAIL") << " sandwich dual <= W <= cost with equality\n";
  return sandwich ? kPass : kAssertionFailure;
}

int print_bounds(const SpectrumReport& r, std::ostream& out) {
  out << "components\t" << r.components << '\n';
  out << "zero_multiplicity\t" << r.zero_multiplicity << '\n';
  out << "lambda1\t" << (r.lambda1 ? fixed(*r.lambda1) : "none") << '\n';
  out << "diameter\t" << (r.diameter ? std::to_string(*r.diameter) : "infinite") << '\n';
  out << "d_max\t" << r.d_max << "\nd_min\t" << r.d_min << '\n';
  out << "kappa_min\t" << (r.kappa_min ? r.kappa_min->str() + "\t" + r.kappa_min->decimal(12) : "none") << '\n';
  if (!r.bounds_applicable) {
    const std::string why = r.components != 1 ? "G_M is disconnected" : "kappa_min <= 0";
    out << "N/A myers: bound not applicable (" << why << ")\n";
    out << "N/A lambda1: bound not applicable (" << why << ")\n";
    return kPass;
  }
  out << "myers_bound\t" << r.myers_bound->str() << '\t' << r.myers_bound->decimal(12) << '\n';
  out << "lambda1_bound\t" << r.lambda1_bound->str() << '\t' << r.lambda1_bound->decimal(12) << '\n';
  out << (r.myers_pass ? "PASS" : "FAIL") << " myers: diameter " << *r.diameter << " <= 2/kappa_min "
      << r.myers_bound->str() << '\n';
  out << (r.lambda1_pass ? "PASS" : "FAIL") << " lambda1: " << fixed(*r.lambda1) << " >= "
      << r.lambda1_bound->decimal(12) << '\n';
  return r.ok() ? kPass : kAssertionFailure;
}

int cmd_spectrum(const CellComplex& c, const Options& opt, std::ostream& out, bool list) {
  require_curvature_ready(c, opt.jobs);
  const FaceGraph g(c);
  const auto r = eigen_bound(g, opt.eps, opt.jobs);
  if (list) {
    out << "eigenvalues\t" << r.eigenvalues.size() << '\n';
    for (double x : r.eigenvalues) out << fixed(x) << '\n';
  }
  return print_bounds(r, out);
}

int cmd_bochner(const CellComplex& c, const Options& opt, std::ostream& out) {
  require_curvature_ready(c, opt.jobs);
  const FormOperators ops(c);
  const auto sweep = bochner_sweep(ops, opt.samples, opt.seed);
  out << "samples\t" << sweep.samples << '\n';
  out << "max_deviation\t" << sweep.max_deviation << '\n';
  out << "flat_balance\t" << sweep.flat_balance << '\n';
  const bool identity = sweep.max_deviation <= 1e-9;
  const bool balance = sweep.flat_balance <= 1e-10;
  out << (identity ? "PASS" : "FAIL") << " Ric(w) = (2 - #N0) w^2 within 1e-9\n";
  out << (balance ? "PASS" : "FAIL") << " sum of Delta^flat |w|^2 vanishes within 1e-10\n";
  return identity && balance ? kPass : kAssertionFailure;
}

}  // namespace

CellComplex generate(const std::vector<std::string>& tokens) {
  std::size_t pos = 0;
  auto c = generate_at(tokens, pos);
  if (pos != tokens.size()) throw ComplexError("generator: unexpected token '" + tokens[pos] + "'");
  return c;
}

CellComplex generate(const std::string& spec) {
  std::istringstream ss(spec);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return generate(tokens);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  opt.jobs = default_jobs();

  CLI::App app{"Curvature of regular cell complexes: combinatorial Ricci, LLY curvature, spectra."};
  app.footer(kColumns);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    auto* input = sub->add_option("-i,--input", opt.input, "complex file (default: stdin)");
    sub->add_option("-g,--gen", opt.gen, "generator spec instead of a file, e.g. \"torus 4 4\"")->excludes(input);
    sub->add_option("-f,--format", opt.format, "tsv or text")->check(CLI::IsMember({"tsv", "text"}));
    sub->add_flag("--header", opt.header, "print a header row in TSV output");
    sub->add_option("-j,--jobs", opt.jobs, "worker threads (env CELLRICCI_JOBS)")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "write a generated complex in the text format");
  gen->add_option("spec", opt.gen_tokens, "simplex-boundary n | grid l... | torus k1 k2 | cycle k | point | "
                                          "product <spec> <spec>")
      ->required();
  auto* validate_cmd = app.add_subcommand("validate", "structural checks and the counting identity");
  auto* forman = app.add_subcommand("forman", "combinatorial Ricci curvature per vector");
  auto* lly = app.add_subcommand("lly", "LLY curvature per vector, or kappa_alpha with --alpha");
  auto* compare = app.add_subcommand("compare", "LLY curvature against the closed form");
  auto* transport = app.add_subcommand("transport", "W(m_from, m_to) with an optimal coupling");
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum and curvature bounds");
  auto* bound = app.add_subcommand("bound", "curvature bounds without the eigenvalue list");
  auto* bochner = app.add_subcommand("bochner", "sample the Bochner identity on random 1-forms");
  for (auto* sub : {validate_cmd, forman, lly, compare, transport, spectrum, bound, bochner}) common(sub);
  lly->add_option("-a,--alpha", opt.alpha, "alpha as p/q in [0, 1)");
  transport->add_option("-a,--alpha", opt.alpha, "alpha as p/q (default 1/2)");
  transport->add_option("--from", opt.from, "source cell label")->required();
  transport->add_option("--to", opt.to, "target cell label")->required();
  transport->add_flag("--explicit", opt.explicit_coupling, "also build the explicit coupling and dual witness");
  for (auto* sub : {spectrum, bound}) {
    sub->add_option("--eps", opt.eps, "zero threshold for eigenvalues")->check(CLI::PositiveNumber);
  }
  bochner->add_option("--samples", opt.samples, "minimum number of (form, vector) samples");
  bochner->add_option("--seed", opt.seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt, out);
    const CellComplex c = load(opt, in);
    if (validate_cmd->parsed()) return cmd_validate(c, out);
    if (forman->parsed()) return cmd_forman(c, opt, out);
    if (lly->parsed()) return cmd_lly(c, opt, out);
    if (compare->parsed()) return cmd_compare(c, opt, out);
    if (transport->parsed()) return cmd_transport(c, opt, out);
    if (spectrum->parsed()) return cmd_spectrum(c, opt, out, true);
    if (bound->parsed()) return cmd_spectrum(c, opt, out, false);
    if (bochner->parsed()) return cmd_bochner(c, opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ComplexError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const TransportError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const StructuralError& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const IdentityError& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const LimitNotStabilized& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cellricci::cli
