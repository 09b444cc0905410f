#include "tbdrive/algebra.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tbdrive {

std::string_view to_string(PolyKind kind) {
  switch (kind) {
    case PolyKind::F: return "f";
    case PolyKind::G: return "g";
    case PolyKind::H: return "h";
    case PolyKind::Phi: return "phi";
  }
  return "?";
}

bool CertificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.informational || c.passed; });
}

double CertificationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& c : checks) {
    if (!c.informational) worst = std::max(worst, c.residual);
  }
  return worst;
}

void CertificationReport::append(const CertificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

std::string status_of(const IdentityCheck& c) {
  if (c.informational) return c.passed ? "info-pass" : "info-fail";
  return c.passed ? "pass" : "FAIL";
}

// CSV field quoting for names that contain commas
std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_table(const CertificationReport& report) {
  std::size_t width = 8;
  for (const auto& c : report.checks) width = std::max(width, c.identity.size());
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-10s %4s  %-*s  %-10s  %-9s  %s\n", "boundary", "dim", static_cast<int>(width),
                "identity", "residual", "status", "note");
  os << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-10s %4d  %-*s  %-10s  %-9s  %s\n", std::string(to_string(c.boundary)).c_str(),
                  c.n_sites, static_cast<int>(width), c.identity.c_str(), format_residual(c.residual).c_str(),
                  status_of(c).c_str(), c.note.c_str());
    os << line;
  }
  return os.str();
}

std::string to_csv(const CertificationReport& report) {
  std::ostringstream os;
  os << "boundary,dim,identity,residual,tolerance,status,note\n";
  for (const auto& c : report.checks) {
    os << to_string(c.boundary) << ',' << c.n_sites << ',' << quoted(c.identity) << ',' << format_residual(c.residual)
       << ',' << format_residual(c.tolerance) << ',' << status_of(c) << ',' << quoted(c.note) << '\n';
  }
  return os.str();
}

}  // namespace tbdrive
