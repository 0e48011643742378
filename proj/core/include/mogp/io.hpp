#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mogp/bounds.hpp"
#include "mogp/harness.hpp"
#include "mogp/ksat.hpp"
#include "mogp/pspin.hpp"
#include "mogp/tuples.hpp"

namespace mogp {

// Disorder binary layout, all little-endian:
//   8 bytes  magic "MOGPDIS1"
//   u32 n, u32 p, u64 seed
//   n^p f64 entries, row-major
void write_disorder(std::ostream& out, const DisorderTensor& J);
DisorderTensor read_disorder(std::istream& in);

// DIMACS-style text:
//   c k=<k> gamma=<gamma> seed=<seed>
//   p cnf <n> <M>
//   one clause per line, 1-based signed literals, terminated by 0
// Repeated and complementary literals are written verbatim.
void write_dimacs(std::ostream& out, const Formula& phi, double gamma, std::uint64_t seed);
// k comes from the comment line when present, else from the first clause.
Formula read_dimacs(std::istream& in);

// {"kind": ..., "n": ..., "configurations": [hex...], "matrix": [...]}
std::string witness_json(const TupleWitness& w);
TupleWitness parse_witness_json(std::string_view line);

inline constexpr std::string_view kScanCsvHeader =
    "model,n,pk,m,xi_beta,eta,kappa,gamma,trials,successes,p_hat,ci_low,ci_high,seed";

std::string scan_csv(const ScanResult& r);
std::string scan_json(const ScanResult& r);

std::string exponent_json(const ExponentReport& r);
std::string repair_json(const RepairThreshold& r);

}  // namespace mogp
