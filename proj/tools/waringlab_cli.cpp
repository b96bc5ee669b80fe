// waringlab command-line front end.
//
// Exit codes: 0 success, 1 usage or parse error, 2 degenerate input,
// 3 convergence failure.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "waringlab/error.hpp"
#include "waringlab/io.hpp"
#include "waringlab/secantlab.hpp"
#include "waringlab/vspsampler.hpp"
#include "waringlab/waring.hpp"

using namespace waringlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitConvergence = 3;

Seed default_seed() {
  const char* env = std::getenv("WARINGLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const Seed s = std::stoull(env, &used);
    if (used == std::string(env).size()) return s;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("WARINGLAB_SEED is not a non-negative integer");
}

std::string format_complex(cplx z) {
  std::ostringstream s;
  s << std::setprecision(7);
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) {
    s << z.real();
  } else {
    s << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  }
  return s.str();
}

std::string format_term(const WaringTerm& t, int d) {
  std::ostringstream s;
  s << format_complex(t.weight) << " * (";
  for (Eigen::Index i = 0; i < t.form.coeffs().size(); ++i) {
    if (i > 0) s << " + ";
    s << format_complex(t.form.coeffs()[i]) << " x" << i;
  }
  s << ")^" << d;
  return s.str();
}

void emit(const std::string& out_path, const std::string& json, std::ostream*& summary) {
  if (out_path.empty()) {
    std::cout << json;
    summary = &std::cerr;
  } else {
    write_text_file(out_path, json);
  }
}

std::string choose_algorithm(const std::string& requested, const HomogeneousPoly& f) {
  if (requested != "auto") return requested;
  if (f.num_vars() == 2) return "binary";
  if (f.num_vars() == 4 && f.degree() == 3) return "pentahedral";
  if (f.num_vars() == 3 && f.degree() == 5) return "quintic";
  throw InvalidArgument("no canonical algorithm for " + std::to_string(f.num_vars()) +
                        " variables in degree " + std::to_string(f.degree()));
}

struct DecomposeArgs {
  std::string input, algorithm = "auto", out;
  Seed seed = 0;
  double tol = 1e-8;
};

int run_decompose(const DecomposeArgs& a) {
  const HomogeneousPoly f = parse_polynomial_json(read_text_file(a.input));
  const std::string algo = choose_algorithm(a.algorithm, f);
  std::string witness;
  WaringDecomposition dec(f.degree(), {});
  if (algo == "binary") {
    BinaryOptions o;
    o.residual_tol = a.tol;
    dec = decompose_binary(f, o);
  } else if (algo == "pentahedral") {
    PentahedralOptions o;
    o.residual_tol = a.tol;
    auto [d, w] = decompose_pentahedral(f, a.seed, o);
    dec = std::move(d);
    witness = std::to_string(w.rank2_points.size()) + " points / " +
              std::to_string(w.planes.size()) + " planes";
  } else {
    QuinticOptions o;
    o.residual_tol = a.tol;
    dec = decompose_quintic(f, a.seed, o);
  }
  const double res = residual(f, dec);
  std::ostream* summary = &std::cout;
  emit(a.out, decomposition_to_json(dec, res, a.seed), summary);
  const auto cert = verify_canonical(f, dec);
  std::ostream& s = *summary;
  s << "algorithm: " << algo << "\n";
  s << "terms: " << dec.size() << "\n";
  s << "residual: " << std::setprecision(3) << res << "\n";
  s << "certificate: " << (cert.pass ? "pass" : "fail") << " (rank " << cert.measured_rank
    << "/" << cert.expected_rank << ")\n";
  if (!witness.empty()) s << "witness: " << witness << "\n";
  try {
    const auto monic = dec.monic_last_terms();
    s << "last-coefficient-1 convention:\n";
    for (const auto& t : monic) s << "  " << format_term(t, dec.degree()) << "\n";
  } catch (const InvalidArgument&) {
    s << "last-coefficient-1 convention: unavailable (a form has last coefficient 0)\n";
  }
  return kExitOk;
}

int run_tables(const std::string& which, const std::string& format, const std::string& out) {
  std::vector<Table> tables;
  if (which == "ver" || which == "all") tables.push_back(table_ver());
  if (which == "grassmann" || which == "all") tables.push_back(table_grassmann());
  if (which == "segre-veronese" || which == "all") tables.push_back(table_segre_veronese());
  std::string text;
  if (format == "csv") {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i > 0) text += "\n";
      text += table_csv(tables[i]);
    }
  } else if (tables.size() == 1) {
    text = table_json(tables.front());
  } else {
    auto all = nlohmann::ordered_json::array();
    for (const auto& t : tables) all.push_back(nlohmann::ordered_json::parse(table_json(t)));
    text = all.dump(2) + "\n";
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
  return kExitOk;
}

int run_secant(const std::string& spec, int h, Seed seed) {
  const auto x = ParamVariety::parse(spec);
  const auto expected = expected_secant_dim(x.dim(), x.ambient_n(), h);
  const int sampled = terracini_secant_dim(x, h, seed);
  std::cout << "expected " << expected << ", sampled " << sampled << ", "
            << (sampled < expected ? "defective" : "not defective") << "\n";
  return kExitOk;
}

int run_sample(const std::string& input, int h, Seed seed, const std::string& out) {
  const HomogeneousPoly f = parse_polynomial_json(read_text_file(input));
  const auto dec = sample_vsp(f, h, seed);
  const double res = residual(f, dec);
  std::ostream* summary = &std::cout;
  emit(out, decomposition_to_json(dec, res, seed), summary);
  *summary << "terms: " << dec.size() << "\n"
           << "residual: " << std::setprecision(3) << res << "\n";
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::invalid_input: return kExitUsage;
    case ErrorClass::degenerate: return kExitDegenerate;
    case ErrorClass::convergence: return kExitConvergence;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waring decompositions, secant dimensions and VSP sampling"};
  app.require_subcommand(1);

  Seed seed = 0;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (default: $WARINGLAB_SEED or 0)")
        ->each([&](const std::string&) { seed_given = true; });
  };

  DecomposeArgs dargs;
  auto* dec = app.add_subcommand("decompose", "decompose a polynomial file");
  dec->add_option("--input", dargs.input, "polynomial JSON file")->required()->check(CLI::ExistingFile);
  dec->add_option("--algorithm", dargs.algorithm)
      ->check(CLI::IsMember({"binary", "pentahedral", "quintic", "auto"}));
  dec->add_option("--tol", dargs.tol, "residual tolerance")->check(CLI::PositiveNumber);
  dec->add_option("--out", dargs.out, "output JSON file (default: stdout)");
  add_seed(dec);

  std::string which = "all", format = "csv", tables_out;
  auto* tab = app.add_subcommand("tables", "regenerate the dimension tables");
  tab->add_option("--which", which)
      ->check(CLI::IsMember({"ver", "grassmann", "segre-veronese", "all"}));
  tab->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  tab->add_option("--out", tables_out);

  std::string variety;
  int h = 0;
  auto* sec = app.add_subcommand("secant", "Terracini secant dimension");
  sec->set_help_flag("--help", "print this help");
  sec->add_option("--variety", variety,
                  "veronese:n:d | rnc:d | quadric:N | segre-veronese:n:m:a:b | grassmann:r:n")
      ->required();
  sec->add_option("--h", h)->required()->check(CLI::PositiveNumber);
  add_seed(sec);

  std::string sample_input, sample_out;
  int sample_h = 0;
  auto* smp = app.add_subcommand("sample", "sample a point of VSP(F, h)");
  smp->set_help_flag("--help", "print this help");
  smp->add_option("--input", sample_input)->required()->check(CLI::ExistingFile);
  smp->add_option("--h", sample_h)->required()->check(CLI::PositiveNumber);
  smp->add_option("--out", sample_out);
  add_seed(smp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    dargs.seed = seed;
    if (*dec) return run_decompose(dargs);
    if (*tab) return run_tables(which, format, tables_out);
    if (*sec) return run_secant(variety, h, seed);
    if (*smp) return run_sample(sample_input, sample_h, seed, sample_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
