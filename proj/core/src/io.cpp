#include "mogp/io.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mogp/error.hpp"

namespace mogp {

namespace {

using nlohmann::json;

constexpr std::array<char, 8> kDisorderMagic = {'M', 'O', 'G', 'P', 'D', 'I', 'S', '1'};

template <class U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> b;
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> b;
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) throw FormatError("read_disorder: truncated input");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

// Shortest text that reads back to the same double.
std::string num(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::string_view kind_name(ConstraintKind k) { return k == ConstraintKind::spin_overlap ? "spin" : "assignment"; }

json config_json(const ExperimentConfig& c) {
  return {{"model", model_name(c.model)},
          {"n", c.n},
          {"pk", c.pk},
          {"m", c.m},
          {"xi_beta", c.xi_beta},
          {"eta", c.eta},
          {"kappa", c.kappa},
          {"kappa_auto", c.kappa_auto},
          {"gammas", c.gammas},
          {"trials", c.trials},
          {"seed", c.seed},
          {"memory_bytes", c.budget.memory_bytes},
          {"max_nodes", c.budget.max_nodes}};
}

}  // namespace

void write_disorder(std::ostream& out, const DisorderTensor& J) {
  out.write(kDisorderMagic.data(), kDisorderMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(J.n()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(J.p()));
  put_le<std::uint64_t>(out, J.seed());
  for (double x : J.entries()) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    put_le<std::uint64_t>(out, bits);
  }
}

DisorderTensor read_disorder(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kDisorderMagic) throw FormatError("read_disorder: bad magic");
  const auto n = static_cast<int>(get_le<std::uint32_t>(in));
  const auto p = static_cast<int>(get_le<std::uint32_t>(in));
  const auto seed = get_le<std::uint64_t>(in);
  std::uint64_t size;
  try {
    size = tensor_size(n, p);
  } catch (const Error& e) {
    throw FormatError(std::string("read_disorder: bad header: ") + e.what());
  }
  std::vector<double> entries(size);
  for (auto& x : entries) {
    const auto bits = get_le<std::uint64_t>(in);
    std::memcpy(&x, &bits, sizeof x);
  }
  return DisorderTensor(n, p, std::move(entries), seed);
}

void write_dimacs(std::ostream& out, const Formula& phi, double gamma, std::uint64_t seed) {
  out << "c k=" << phi.k << " gamma=" << num(gamma) << " seed=" << seed << '\n';
  out << "p cnf " << phi.n << ' ' << phi.size() << '\n';
  for (const auto& c : phi.clauses) {
    for (const auto& l : c.literals) out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
    out << "0\n";
  }
}

Formula read_dimacs(std::istream& in) {
  Formula phi;
  int k = -1;
  std::int64_t M = -1;
  bool header = false;
  std::string line;
  Clause current;
  while (std::getline(in, line)) {
    std::istringstream s(line);
    std::string tok;
    if (!(s >> tok)) continue;
    if (tok == "c") {
      while (s >> tok)
        if (tok.rfind("k=", 0) == 0) k = std::stoi(tok.substr(2));
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (!(s >> fmt >> phi.n >> M) || fmt != "cnf") throw FormatError("read_dimacs: bad problem line");
      header = true;
      continue;
    }
    if (!header) throw FormatError("read_dimacs: clause before problem line");
    s.clear();
    s.str(line);
    long long lit;
    while (s >> lit) {
      if (lit == 0) {
        phi.clauses.push_back(std::move(current));
        current = Clause{};
      } else {
        const auto var = static_cast<int>((lit < 0 ? -lit : lit) - 1);
        current.literals.push_back({var, lit < 0});
      }
    }
    if (!s.eof()) throw FormatError("read_dimacs: bad literal");
  }
  if (!header) throw FormatError("read_dimacs: missing problem line");
  if (!current.literals.empty()) throw FormatError("read_dimacs: unterminated clause");
  if (static_cast<std::int64_t>(phi.clauses.size()) != M) throw FormatError("read_dimacs: clause count differs from header");
  if (k < 0) k = phi.clauses.empty() ? 0 : static_cast<int>(phi.clauses.front().literals.size());
  phi.k = k;
  try {
    phi.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("read_dimacs: ") + e.what());
  }
  return phi;
}

std::string witness_json(const TupleWitness& w) {
  json j;
  j["kind"] = kind_name(w.kind);
  j["n"] = w.n();
  auto configs = json::array();
  for (const auto& c : w.configurations) configs.push_back(c.to_hex());
  j["configurations"] = configs;
  j["matrix"] = w.matrix;
  return j.dump();
}

TupleWitness parse_witness_json(std::string_view line) {
  try {
    const auto j = json::parse(line);
    const auto kind =
        j.at("kind").get<std::string>() == "spin" ? ConstraintKind::spin_overlap : ConstraintKind::hamming_distance;
    const int n = j.at("n").get<int>();
    std::vector<BitString> configs;
    for (const auto& h : j.at("configurations")) configs.push_back(BitString::from_hex(n, h.get<std::string>()));
    auto w = make_witness(kind, std::move(configs));
    if (j.at("matrix").get<std::vector<int>>() != w.matrix) throw FormatError("parse_witness_json: matrix inconsistent");
    return w;
  } catch (const json::exception& e) {
    throw FormatError(std::string("parse_witness_json: ") + e.what());
  }
}

std::string scan_csv(const ScanResult& r) {
  std::ostringstream out;
  out << kScanCsvHeader << '\n';
  const auto& c = r.config;
  for (const auto& row : r.rows) {
    out << model_name(c.model) << ',' << c.n << ',' << c.pk << ',' << c.m << ',' << num(c.xi_beta) << ','
        << num(c.eta) << ',' << num(row.kappa) << ',' << num(row.gamma) << ',' << row.trials << ','
        << row.successes << ',' << num(row.p_hat) << ',' << num(row.ci_low) << ',' << num(row.ci_high) << ','
        << row.seed << '\n';
  }
  return out.str();
}

std::string scan_json(const ScanResult& r) {
  json j;
  j["version"] = r.version;
  j["config"] = config_json(r.config);
  j["failed_trials"] = r.failed_trials;
  j["incomplete"] = r.incomplete();
  auto rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"gamma", row.gamma},
                    {"trials", row.trials},
                    {"successes", row.successes},
                    {"p_hat", row.p_hat},
                    {"ci_low", row.ci_low},
                    {"ci_high", row.ci_high},
                    {"seed", row.seed},
                    {"kappa", row.kappa},
                    {"clauses", row.clauses},
                    {"degenerate", row.degenerate},
                    {"incomplete", row.incomplete}});
  }
  j["rows"] = rows;
  j["trial_statistics"] = r.trial_statistics;
  if (r.rows.size() >= 2) {
    const auto x = estimate_crossing(r);
    j["crossing"] = x ? json(*x) : json(nullptr);
  }
  return j.dump(2);
}

std::string exponent_json(const ExponentReport& r) {
  json j;
  j["model"] = r.model;
  json params = json::object(), values = json::object(), flags = json::object(), residuals = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  for (const auto& [k, v] : r.values) values[k] = v;
  for (const auto& [k, v] : r.flags) flags[k] = v;
  for (const auto& [k, v] : r.residuals) residuals[k] = v;
  j["parameters"] = params;
  j["values"] = values;
  j["flags"] = flags;
  j["residuals"] = residuals;
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string repair_json(const RepairThreshold& r) {
  json j{{"alpha", r.alpha},
         {"M", r.M},
         {"T", r.T},
         {"required", r.required},
         {"t_star", r.t_star},
         {"t_star_t_power", r.t_star_t_power},
         {"t_star_m_power", r.t_star_m_power},
         {"t_power_satisfies", r.t_power_satisfies},
         {"m_power_satisfies", r.m_power_satisfies},
         {"note", "t_star_m_power is the displayed M^{k/2} form; t_star is the smallest value meeting the inequality"}};
  return j.dump(2);
}

}  // namespace mogp
