#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "waringlab/error.hpp"
#include "waringlab/polycore.hpp"
#include "waringlab/secantlab.hpp"

namespace waringlab {

namespace {

// Picks the published (k, h_bar) when the formula produces it, otherwise the
// admissible candidate with the smallest h_bar.
void select_candidate(TableRow& row, std::int64_t ref_k) {
  const auto cands = rc2_search(row.big_n, row.dim);
  const Rc2Candidate* chosen = nullptr;
  for (const auto& c : cands) {
    if (c.k == ref_k && c.h_bar == row.reference_h_bar) chosen = &c;
  }
  if (chosen == nullptr) {
    for (const auto& c : cands) {
      if (c.constraint_ok && (chosen == nullptr || c.h_bar < chosen->h_bar)) chosen = &c;
    }
  }
  if (chosen != nullptr) {
    row.k = chosen->k;
    row.h_bar = chosen->h_bar;
    row.constraint_ok = chosen->constraint_ok;
  }
  row.discrepancy = row.dim != row.reference_dim || row.big_n != row.reference_n ||
                    row.k != row.reference_k || row.h_bar != row.reference_h_bar;
  if (!row.discrepancy) return;
  std::vector<std::string> parts;
  if (row.big_n != row.reference_n) {
    parts.push_back("formula gives N = " + std::to_string(row.big_n) + " against published " +
                    std::to_string(row.reference_n));
  } else if (row.big_n % (ref_k + 1) != 0 || row.big_n / (ref_k + 1) != row.reference_h_bar) {
    parts.push_back("published k = " + std::to_string(ref_k) + " does not give h_bar = N/(k+1) = " +
                    std::to_string(row.reference_h_bar));
  }
  if (row.dim != row.reference_dim) {
    parts.push_back("formula gives dim = " + std::to_string(row.dim));
  }
  if (!row.k) {
    parts.push_back("no k with 0 < k < n and (k+1) | N satisfies the constraint");
  } else {
    parts.push_back("formula selects k = " + std::to_string(*row.k) +
                    " h_bar = " + std::to_string(*row.h_bar));
  }
  std::string note;
  for (const auto& part : parts) note += (note.empty() ? "" : "; ") + part;
  row.note = note;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "true" : "false";
  } else {
    return std::to_string(*v);
  }
}

template <class T>
nlohmann::ordered_json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

TableRow grassmann_row(int r, int n, std::int64_t ref_dim, std::int64_t ref_n,
                       std::int64_t ref_k, std::int64_t ref_h_bar) {
  if (!(r >= 0 && n > r)) throw InvalidArgument("grassmann_row: need 0 <= r < n");
  TableRow row;
  row.inputs = {{"r", r}, {"n", n}};
  row.dim = static_cast<std::int64_t>(r + 1) * (n - r);
  row.big_n = binomial(n + 1, r + 1) - 1;
  row.reference_dim = ref_dim;
  row.reference_n = ref_n;
  row.reference_k = ref_k;
  row.reference_h_bar = ref_h_bar;
  select_candidate(row, ref_k);
  return row;
}

TableRow segre_veronese_row(int n, int m, int a, int b, std::int64_t ref_dim,
                            std::int64_t ref_n, std::int64_t ref_k,
                            std::int64_t ref_h_bar) {
  if (n < 1 || m < 1 || a < 1 || b < 1) {
    throw InvalidArgument("segre_veronese_row: need n, m, a, b >= 1");
  }
  TableRow row;
  row.inputs = {{"n", n}, {"m", m}, {"a", a}, {"b", b}};
  row.dim = n + m;
  row.big_n = binomial(a + n, n) * binomial(b + m, m) - 1;
  row.reference_dim = ref_dim;
  row.reference_n = ref_n;
  row.reference_k = ref_k;
  row.reference_h_bar = ref_h_bar;
  select_candidate(row, ref_k);
  if (row.big_n != ref_n && binomial(b + n, n) * binomial(a + m, m) - 1 == ref_n) {
    row.note += "; published N equals the value with a and b interchanged";
  }
  return row;
}

Table table_ver() {
  Table t{"waringlab.table.ver_bound", {"d", "n"}, {}};
  const std::int64_t published[3][4] = {
      {3, 100, 176850, 176818}, {3, 150, 585275, 585226}, {4, 200, 70058750, 70058701}};
  for (const auto& p : published) {
    const auto vb = ver_bound(p[1], p[0]);
    TableRow row;
    row.inputs = {{"d", p[0]}, {"n", p[1]}};
    row.dim = p[1];
    row.big_n = vb.big_n;
    row.h_bar = vb.h_bar;
    row.reference_dim = p[1];
    row.reference_n = p[2];
    row.reference_h_bar = p[3];
    row.discrepancy = row.big_n != p[2] || vb.h_bar != p[3];
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table table_grassmann() {
  Table t{"waringlab.table.grassmann", {"r", "n"}, {}};
  const std::int64_t published[5][6] = {{1, 4, 6, 9, 2, 3},
                                        {1, 5, 8, 14, 6, 3},
                                        {2, 6, 12, 34, 1, 17},
                                        {2, 7, 15, 55, 10, 5},
                                        {3, 8, 20, 125, 4, 25}};
  for (const auto& p : published) {
    t.rows.push_back(grassmann_row(static_cast<int>(p[0]), static_cast<int>(p[1]), p[2],
                                   p[3], p[4], p[5]));
  }
  return t;
}

Table table_segre_veronese() {
  Table t{"waringlab.table.segre_veronese", {"n", "m", "a", "b"}, {}};
  const std::int64_t published[5][8] = {{2, 3, 1, 3, 5, 39, 2, 13},
                                        {4, 4, 2, 3, 8, 524, 3, 131},
                                        {4, 4, 3, 3, 8, 1224, 3, 153},
                                        {5, 5, 3, 3, 10, 3135, 4, 627},
                                        {5, 5, 3, 4, 10, 7055, 4, 1411}};
  for (const auto& p : published) {
    t.rows.push_back(segre_veronese_row(static_cast<int>(p[0]), static_cast<int>(p[1]),
                                        static_cast<int>(p[2]), static_cast<int>(p[3]),
                                        p[4], p[5], p[6], p[7]));
  }
  return t;
}

std::string table_csv(const Table& t) {
  std::ostringstream out;
  out << "# schema=" << t.schema << "\n";
  for (const auto& name : t.input_names) out << name << ",";
  out << "dim,N,k,h_bar,constraint_ok,reference_dim,reference_N,reference_k,"
         "reference_h_bar,discrepancy,note\n";
  for (const auto& r : t.rows) {
    for (const auto& in : r.inputs) out << in.second << ",";
    out << r.dim << "," << r.big_n << "," << opt_str(r.k) << "," << opt_str(r.h_bar)
        << "," << opt_str(r.constraint_ok) << "," << r.reference_dim << ","
        << r.reference_n << "," << opt_str(r.reference_k) << "," << r.reference_h_bar
        << "," << (r.discrepancy ? "true" : "false") << "," << csv_escape(r.note) << "\n";
  }
  return out.str();
}

std::string table_json(const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    for (const auto& in : r.inputs) row[in.first] = in.second;
    row["dim"] = r.dim;
    row["N"] = r.big_n;
    row["k"] = opt_json(r.k);
    row["h_bar"] = opt_json(r.h_bar);
    row["constraint_ok"] = opt_json(r.constraint_ok);
    row["reference_dim"] = r.reference_dim;
    row["reference_N"] = r.reference_n;
    row["reference_k"] = opt_json(r.reference_k);
    row["reference_h_bar"] = r.reference_h_bar;
    row["discrepancy"] = r.discrepancy;
    row["note"] = r.note;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace waringlab
