#include "waringlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "waringlab/error.hpp"

namespace waringlab {

namespace {

using nlohmann::ordered_json;

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line of the first occurrence of `"key"` at or after `from`, for messages.
int line_of_key(const std::string& text, const std::string& key, std::size_t occurrence) {
  const std::string needle = "\"" + key + "\"";
  std::size_t pos = 0;
  for (std::size_t k = 0; k <= occurrence; ++k) {
    pos = text.find(needle, k == 0 ? 0 : pos + 1);
    if (pos == std::string::npos) return 0;
  }
  return line_of(text, pos);
}

class FieldError {
 public:
  FieldError(const std::string& /*text*/, std::string path, int line)
      : path_(std::move(path)), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream m;
    if (line_ > 0) m << "line " << line_ << ": ";
    m << "field '" << path_ << "': " << what;
    throw InvalidArgument(m.str());
  }

 private:
  std::string path_;
  int line_;
};

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InvalidArgument("line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) +
                          ": malformed JSON (" + e.what() + ")");
  }
}

const ordered_json& require(const ordered_json& obj, const std::string& key,
                            const std::string& text, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    FieldError(text, path + key, line_of_key(text, key, 0)).fail("missing");
  }
  return obj.at(key);
}

cplx parse_complex(const ordered_json& v, const FieldError& err) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    err.fail("expected [re, im]");
  }
  return cplx(v[0].get<double>(), v[1].get<double>());
}

int parse_int(const ordered_json& v, const FieldError& err) {
  if (!v.is_number_integer()) err.fail("expected an integer");
  return v.get<int>();
}

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

}  // namespace

HomogeneousPoly parse_polynomial_json(const std::string& text) {
  const auto doc = parse_document(text);
  if (!doc.is_object()) throw InvalidArgument("line 1: expected a JSON object");
  const int n = parse_int(require(doc, "n", text, ""), FieldError(text, "n", line_of_key(text, "n", 0)));
  const int d = parse_int(require(doc, "d", text, ""), FieldError(text, "d", line_of_key(text, "d", 0)));
  if (n < 0) FieldError(text, "n", line_of_key(text, "n", 0)).fail("must be >= 0");
  if (d < 0) FieldError(text, "d", line_of_key(text, "d", 0)).fail("must be >= 0");
  const auto& terms = require(doc, "terms", text, "");
  if (!terms.is_array()) {
    FieldError(text, "terms", line_of_key(text, "terms", 0)).fail("expected an array");
  }
  HomogeneousPoly f(n + 1, d);
  Vector coeffs = Vector::Zero(static_cast<Eigen::Index>(f.size()));
  std::set<Exponent> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string base = "terms[" + std::to_string(i) + "].";
    const auto& t = terms[i];
    const FieldError exp_err(text, base + "exp", line_of_key(text, "exp", i));
    const FieldError coeff_err(text, base + "coeff", line_of_key(text, "coeff", i));
    if (!t.is_object()) {
      FieldError(text, "terms[" + std::to_string(i) + "]", 0).fail("expected an object");
    }
    if (!t.contains("exp")) exp_err.fail("missing");
    if (!t.contains("coeff")) coeff_err.fail("missing");
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n + 1)) {
      exp_err.fail("expected " + std::to_string(n + 1) + " exponents");
    }
    Exponent exp;
    int sum = 0;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<int>() < 0) exp_err.fail("exponents must be integers >= 0");
      exp.push_back(v.get<int>());
      sum += exp.back();
    }
    if (sum != d) {
      exp_err.fail("exponents sum to " + std::to_string(sum) + ", expected d = " + std::to_string(d));
    }
    if (!seen.insert(exp).second) exp_err.fail("duplicate monomial");
    coeffs[static_cast<Eigen::Index>(monomial_index(exp))] = parse_complex(t.at("coeff"), coeff_err);
  }
  return HomogeneousPoly(n + 1, d, std::move(coeffs));
}

std::string polynomial_to_json(const HomogeneousPoly& f) {
  ordered_json j;
  j["n"] = f.num_vars() - 1;
  j["d"] = f.degree();
  j["terms"] = ordered_json::array();
  const auto mons = monomials(f.num_vars(), f.degree());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    const cplx c = f.coeffs()[static_cast<Eigen::Index>(i)];
    if (c == 0.0) continue;
    j["terms"].push_back({{"exp", mons[i]}, {"coeff", complex_json(c)}});
  }
  return j.dump(2) + "\n";
}

std::string decomposition_to_json(const WaringDecomposition& dec, double residual,
                                  Seed seed) {
  ordered_json j;
  j["d"] = dec.degree();
  j["terms"] = ordered_json::array();
  for (const auto& t : dec.terms()) {
    ordered_json form = ordered_json::array();
    for (Eigen::Index i = 0; i < t.form.coeffs().size(); ++i) {
      form.push_back(complex_json(t.form.coeffs()[i]));
    }
    j["terms"].push_back({{"lambda", complex_json(t.weight)}, {"form", std::move(form)}});
  }
  j["residual"] = residual;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

DecompositionRecord parse_decomposition_json(const std::string& text) {
  const auto doc = parse_document(text);
  if (!doc.is_object()) throw InvalidArgument("line 1: expected a JSON object");
  const int d = parse_int(require(doc, "d", text, ""), FieldError(text, "d", line_of_key(text, "d", 0)));
  const auto& terms = require(doc, "terms", text, "");
  if (!terms.is_array()) {
    FieldError(text, "terms", line_of_key(text, "terms", 0)).fail("expected an array");
  }
  std::vector<WaringTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string base = "terms[" + std::to_string(i) + "].";
    const FieldError lerr(text, base + "lambda", line_of_key(text, "lambda", i));
    const FieldError ferr(text, base + "form", line_of_key(text, "form", i));
    const auto& t = terms[i];
    if (!t.is_object() || !t.contains("lambda")) lerr.fail("missing");
    if (!t.contains("form")) ferr.fail("missing");
    const cplx w = parse_complex(t.at("lambda"), lerr);
    const auto& form = t.at("form");
    if (!form.is_array() || form.empty()) ferr.fail("expected a non-empty array");
    Vector c(static_cast<Eigen::Index>(form.size()));
    for (std::size_t k = 0; k < form.size(); ++k) {
      c[static_cast<Eigen::Index>(k)] = parse_complex(form[k], ferr);
    }
    if (!(c.norm() > 0.0)) ferr.fail("zero linear form");
    out.push_back({w, LinearForm(c)});
  }
  DecompositionRecord rec{WaringDecomposition(d, std::move(out), true), 0.0, 0};
  if (doc.contains("residual")) {
    if (!doc["residual"].is_number()) {
      FieldError(text, "residual", line_of_key(text, "residual", 0)).fail("expected a number");
    }
    rec.residual = doc["residual"].get<double>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      FieldError(text, "seed", line_of_key(text, "seed", 0)).fail("expected a non-negative integer");
    }
    rec.seed = doc["seed"].get<Seed>();
  }
  return rec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write failed for '" + path + "'");
}

}  // namespace waringlab
