#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "mogp/error.hpp"
#include "mogp/io.hpp"

using namespace mogp;

TEST_CASE("disorder binary round trip") {
  RandomStream s(31, 4);
  const auto J = sample_disorder(5, 3, s);
  std::stringstream buf;
  write_disorder(buf, J);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 8 + 4 + 4 + 8 + 125 * 8);
  CHECK(bytes.substr(0, 8) == "MOGPDIS1");
  const auto back = read_disorder(buf);
  CHECK(back.n() == 5);
  CHECK(back.p() == 3);
  CHECK(back.seed() == 31);
  CHECK(back.entries() == J.entries());

  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_disorder(truncated), FormatError);
  std::stringstream bad("NOTMAGIC");
  CHECK_THROWS_AS(read_disorder(bad), FormatError);
}

TEST_CASE("DIMACS round trip keeps repeated and complementary literals") {
  Formula f{4, 3, {}};
  f.clauses.push_back({{{0, false}, {0, false}, {3, true}}});
  f.clauses.push_back({{{1, false}, {1, true}, {2, false}}});
  std::stringstream out;
  write_dimacs(out, f, 0.25, 9);
  const std::string text = out.str();
  CHECK(text.find("p cnf 4 2") != std::string::npos);
  CHECK(text.find("1 1 -4 0") != std::string::npos);
  CHECK(text.find("2 -2 3 0") != std::string::npos);
  std::istringstream in(text);
  const auto g = read_dimacs(in);
  CHECK(g.n == 4);
  CHECK(g.k == 3);
  CHECK(g.clauses == f.clauses);

  RandomStream s(2, 2);
  const auto r = sample_formula(7, 4, 33, s);
  std::stringstream rt;
  write_dimacs(rt, r, 0.1, 2);
  CHECK(read_dimacs(rt).clauses == r.clauses);

  std::istringstream wrong("p cnf 3 2\n1 2 0\n");
  CHECK_THROWS_AS(read_dimacs(wrong), FormatError);
  std::istringstream open("p cnf 3 1\n1 2\n");
  CHECK_THROWS_AS(read_dimacs(open), FormatError);
}

TEST_CASE("witness JSON round trip") {
  const auto w = make_witness(ConstraintKind::hamming_distance,
                              std::vector<BitString>{BitString::from_rank(70, 5), BitString(70).complement()});
  const auto line = witness_json(w);
  CHECK(line.find('\n') == std::string::npos);
  const auto back = parse_witness_json(line);
  CHECK(back.kind == w.kind);
  CHECK(back.configurations == w.configurations);
  CHECK(back.matrix == w.matrix);
  CHECK(back.at(0, 1) == 68);

  auto j = nlohmann::json::parse(line);
  j["matrix"][1] = 3;
  CHECK_THROWS_AS(parse_witness_json(j.dump()), FormatError);
  CHECK_THROWS_AS(parse_witness_json("{"), FormatError);
}

TEST_CASE("exponent and repair JSON use stable names") {
  const auto e = nlohmann::json::parse(exponent_json(pspin_exponents(2, 0.5, 6, 0.5, 0.25, 0.2)));
  CHECK(e.at("model") == "pspin");
  CHECK(e.at("values").contains("first_moment"));
  CHECK(e.at("flags").contains("margin_positive"));
  const auto r = nlohmann::json::parse(repair_json(repair_threshold(50, 6, 2, 0.3, 0.3, 0.1, 0.2)));
  CHECK(r.contains("t_star"));
}
