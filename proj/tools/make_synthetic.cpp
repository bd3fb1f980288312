// Writes the bundled demonstration dataset:
//   make_synthetic data/synthetic_13x42.csv [seed]

#include <iostream>
#include <string>

#include <fmt/format.h>

#include "leadlag/app.hpp"
#include "leadlag/synthetic.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_synthetic <out.csv> [seed]\n";
    return 1;
  }
  leadlag::SyntheticSpec spec;
  if (argc > 2) spec.seed = std::stoull(argv[2]);
  const auto table = leadlag::synthetic_table(spec);

  std::string csv = "date";
  for (const auto& n : table.variable_names()) csv += "," + n;
  csv += "\n";
  for (std::size_t t = 0; t < table.num_steps(); ++t) {
    csv += table.timestamps()[t];
    for (std::size_t i = 0; i < table.num_variables(); ++i) csv += fmt::format(",{:.6f}", table.value(t, i));
    csv += "\n";
  }
  leadlag::write_file_atomic(argv[1], csv);
  std::cout << "wrote " << argv[1] << " (lead variable " << table.variable_names()[spec.lead_index] << ")\n";
  return 0;
}
