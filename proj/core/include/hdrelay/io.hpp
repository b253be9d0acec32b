#pragma once

#include <string>

#include "hdrelay/closedform2.hpp"
#include "hdrelay/gdof.hpp"
#include "hdrelay/network.hpp"

namespace hdrelay::io {

// Network file: {"n_relays": N, "beta": [[...]]} with the row/column
// convention of ExponentMatrix. Entries may be JSON numbers or strings
// ("p/q" or decimal text); strings are exact in rational mode.
ExponentMatrix<Rational> load_network_exact(const std::string& path);
ExponentMatrix<double> load_network_float(const std::string& path);
ExponentMatrix<Rational> parse_network_exact(const std::string& json_text);
ExponentMatrix<double> parse_network_float(const std::string& json_text);

std::string network_to_json(const ExponentMatrix<Rational>& b);
std::string network_to_csv(const ExponentMatrix<Rational>& b);
std::string network_to_csv(const ExponentMatrix<double>& b);

// TwoRelayParams file: {"a_s1":..,"a_s2":..,"a_1d":..,"a_2d":..,"b_1":..,"b_2":..}.
TwoRelayParams<double> load_two_relay(const std::string& path);

// Weight matrix for the mwbm debug subcommand:
// {"weights": [[3, null, 2], ...]} with null marking ABSENT edges.
MaskedWeightMatrix<Rational> load_weights_exact(const std::string& path);
MaskedWeightMatrix<double> load_weights_float(const std::string& path);

std::string solution_to_json(const GdofSolution<Rational>& sol);
std::string solution_to_json(const GdofSolution<double>& sol);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hdrelay::io
