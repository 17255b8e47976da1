#include "catpursuit/trace_io.hpp"

#include "catpursuit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace catpursuit {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorKind::Schema, where + ": not a number: '" + s + "'");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Configuration, "cannot write " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Configuration, "cannot read " + path.string());
  return is;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(const PursuitTrace& tr, const std::filesystem::path& path) {
  auto os = open_out(path);
  const auto& cols = trace_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (std::size_t k = 0; k < tr.size(); ++k) {
    os << k;
    for (double v : {tr.time(k), tr.separation[k], tr.alpha[k], tr.alpha_tilde[k], tr.beta[k], tr.increment[k],
                     tr.tau_p[k], tr.tau_e[k], tr.c_p[k], tr.c_e[k], tr.r_p[k], tr.r_e[k]}) {
      os << ',' << format_double(v);
    }
    os << '\n';
  }
}

PursuitTrace read_trace_csv(const std::filesystem::path& path) {
  auto is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Schema, path.string() + ": empty file");
  if (split(line) != trace_columns()) throw Error(ErrorKind::Schema, path.string() + ": unexpected header");
  PursuitTrace tr;
  std::vector<double> t;
  std::vector<double>* cols[] = {&t,         &tr.separation, &tr.alpha, &tr.alpha_tilde, &tr.beta,
                                 &tr.increment, &tr.tau_p,   &tr.tau_e, &tr.c_p,         &tr.c_e,
                                 &tr.r_p,    &tr.r_e};
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    const std::string where = path.string() + " row " + std::to_string(row + 1);
    if (cells.size() != trace_columns().size()) throw Error(ErrorKind::Schema, where + ": wrong column count");
    if (parse_double(cells[0], where) != static_cast<double>(row)) {
      throw Error(ErrorKind::Schema, where + ": step index out of sequence");
    }
    for (std::size_t c = 1; c < cells.size(); ++c) cols[c - 1]->push_back(parse_double(cells[c], where));
    ++row;
  }
  if (row == 0) throw Error(ErrorKind::Schema, path.string() + ": no rows");
  tr.step = row > 1 ? t[1] : 0.0;
  for (auto* v : {&tr.phi, &tr.delta, &tr.theta}) v->assign(row, std::numeric_limits<double>::quiet_NaN());
  // A run that stops early with L <= D ended in capture.
  if (row >= 1 && tr.step > 0.0 && tr.separation.back() <= tr.step) tr.capture_step = row - 1;
  // Curvature is not part of the file; callers that need B recompute it.
  tr.b_min = std::numeric_limits<double>::quiet_NaN();
  return tr;
}

void write_positions_csv(const PursuitTrace& tr, const std::filesystem::path& path) {
  auto os = open_out(path);
  if (tr.pursuer.empty()) throw Error(ErrorKind::IncompleteTrace, "trace has no positions");
  if (tr.pursuer.front().on_tree()) {
    os << "step,p_edge,p_offset,e_edge,e_offset\n";
    for (std::size_t k = 0; k < tr.pursuer.size(); ++k) {
      const auto& p = tr.pursuer[k].location();
      const auto& e = tr.evader[k].location();
      os << k << ',' << p.edge << ',' << format_double(p.offset) << ',' << e.edge << ',' << format_double(e.offset)
         << '\n';
    }
    return;
  }
  const auto dim = tr.pursuer.front().coords().size();
  os << "step";
  for (const char* who : {"p", "e"}) {
    for (Eigen::Index i = 0; i < dim; ++i) os << ',' << who << i;
  }
  os << '\n';
  for (std::size_t k = 0; k < tr.pursuer.size(); ++k) {
    os << k;
    for (const auto* pt : {&tr.pursuer[k], &tr.evader[k]}) {
      for (Eigen::Index i = 0; i < dim; ++i) os << ',' << format_double(pt->coords()[i]);
    }
    os << '\n';
  }
}

void read_positions_csv(const std::filesystem::path& path, PursuitTrace& tr) {
  auto is = open_in(path);
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Schema, path.string() + ": empty file");
  const auto header = split(line);
  if (header.size() < 3 || header.front() != "step" || (header.size() - 1) % 2 != 0) {
    throw Error(ErrorKind::Schema, path.string() + ": unexpected header");
  }
  const bool tree = header[1] == "p_edge";
  const std::size_t dim = (header.size() - 1) / 2;
  tr.pursuer.clear();
  tr.evader.clear();
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    const std::string where = path.string() + " row " + std::to_string(++row);
    if (cells.size() != header.size()) throw Error(ErrorKind::Schema, where + ": wrong column count");
    if (tree) {
      tr.pursuer.push_back(Point::on_tree(static_cast<int>(parse_double(cells[1], where)), parse_double(cells[2], where)));
      tr.evader.push_back(Point::on_tree(static_cast<int>(parse_double(cells[3], where)), parse_double(cells[4], where)));
      continue;
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(dim)), e(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      p[static_cast<Eigen::Index>(i)] = parse_double(cells[1 + i], where);
      e[static_cast<Eigen::Index>(i)] = parse_double(cells[1 + dim + i], where);
    }
    tr.pursuer.emplace_back(p);
    tr.evader.emplace_back(e);
  }
}

}  // namespace catpursuit
