#include "tbdrive/observables.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tbdrive {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string states_csv(const PropagationResult& result) {
  std::string out = "t";
  const Eigen::Index dim = result.states.empty() ? 0 : result.states.front().size();
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto site = std::to_string(result.basis_offset + r);
    out += ",re_" + site + ",im_" + site;
  }
  out += ",norm,mean_n\n";
  const auto obs = occupations(result);
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    out += format_double(result.times[i]);
    for (Eigen::Index r = 0; r < dim; ++r) {
      out += ',' + format_double(result.states[i](r).real());
      out += ',' + format_double(result.states[i](r).imag());
    }
    out += ',' + format_double(obs.norm[i]) + ',' + format_double(obs.mean_position[i]) + '\n';
  }
  return out;
}

std::string observables_csv(const ObservableSeries& series) {
  std::string out = "t";
  for (Eigen::Index r = 0; r < series.occupations.cols(); ++r) out += ",p_" + std::to_string(series.basis_offset + r);
  out += ",mean_n,width,norm";
  if (series.fidelity_vs) out += ",fidelity";
  out += '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out += format_double(series.times[i]);
    for (Eigen::Index r = 0; r < series.occupations.cols(); ++r) out += ',' + format_double(series.occupations(row, r));
    out += ',' + format_double(series.mean_position[i]) + ',' + format_double(series.width[i]) + ',' +
           format_double(series.norm[i]);
    if (series.fidelity_vs) out += ',' + format_double((*series.fidelity_vs)[i]);
    out += '\n';
  }
  return out;
}

StatesTable parse_states_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("states csv: empty input");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 5 || header.front() != "t" || header[header.size() - 2] != "norm" || header.back() != "mean_n") {
    throw std::invalid_argument("states csv: unexpected header");
  }
  const std::size_t dim = (header.size() - 3) / 2;
  StatesTable table;
  table.basis_offset = std::stoi(header[1].substr(3));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() != header.size()) throw std::invalid_argument("states csv: ragged row");
    table.times.push_back(cells[0]);
    StateVector psi(static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) psi(static_cast<Eigen::Index>(r)) = {cells[1 + 2 * r], cells[2 + 2 * r]};
    table.states.push_back(std::move(psi));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace tbdrive
