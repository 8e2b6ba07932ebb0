#pragma once

#include <string>

#include "quench/monte_carlo.hpp"

namespace quench {

// Header: <axes...>,probability,mean_Tq,var_Tq,std_error,failures,n_realizations,n_quenched
// Undefined moments are empty fields. Doubles use shortest round-trip text.
std::string table_csv(const SweepResult& r);
void emit_table(const SweepResult& r, const std::string& path);
// Inverse of table_csv; master_seed is not stored and comes back as 0.
SweepResult parse_table(const std::string& csv);

}  // namespace quench
