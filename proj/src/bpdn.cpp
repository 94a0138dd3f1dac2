#include "b0box/bpdn.hpp"

#include "b0box/csv.hpp"
#include "b0box/random.hpp"

#include <Eigen/QR>

#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace b0box {

BpdnInstance generate_bpdn(Index m, Index n, Index k, std::uint64_t seed, double noise_std) {
  if (!(1 <= k && k <= m && m <= n)) {
    throw std::invalid_argument("need 1 <= k <= m <= n, got m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  }
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise standard deviation must be nonnegative");

  Rng rng(seed);
  Eigen::MatrixXd gaussian(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) gaussian(i, j) = rng.normal();
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    const Index j = i + static_cast<Index>(rng.index(static_cast<std::uint64_t>(n - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  Vector x_star = Vector::Zero(n);
  for (Index i = 0; i < k; ++i) x_star[order[static_cast<std::size_t>(i)]] = rng.uniform() < 0.5 ? -1.0 : 1.0;

  Vector noise(m);
  for (Index i = 0; i < m; ++i) noise[i] = noise_std * rng.normal();

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian.transpose());
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }

  BpdnInstance inst;
  inst.a = q.transpose();
  inst.x_star = std::move(x_star);
  inst.b = inst.a * inst.x_star + noise;
  inst.noise_std = noise_std;
  inst.seed = seed;
  inst.sparsity = k;
  return inst;
}

RegularizedProblem as_problem(const BpdnInstance& inst) {
  // Shared so the problem stays valid independently of `inst`.
  auto data = std::make_shared<const BpdnInstance>(inst);
  RegularizedProblem p;
  p.dimension = inst.cols();
  p.sparsity = inst.sparsity;
  p.residual = [data](const Vector& x) -> Vector { return data->a * x - data->b; };
  p.value = [data](const Vector& x) { return 0.5 * (data->a * x - data->b).squaredNorm(); };
  p.gradient = [data](const Vector& x) -> Vector { return data->a.transpose() * (data->a * x - data->b); };
  p.jacobian_apply = [data](const Vector&, const Vector& v) -> Vector { return data->a * v; };
  p.jacobian_transpose_apply = [data](const Vector&, const Vector& u) -> Vector { return data->a.transpose() * u; };
  return p;
}

double relative_error(const Vector& solution, const BpdnInstance& inst) {
  require_same_length(solution, inst.cols(), "solution");
  const double scale = inst.x_star.norm();
  if (scale == 0.0) throw std::invalid_argument("planted solution is zero");
  return (solution - inst.x_star).norm() / scale;
}

namespace {

void write_row(std::ostream& out, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ',';
    out << csv::full(v[i]);
  }
  out << '\n';
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(std::string("instance file truncated before ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Vector parse_row(const std::string& line, Index expected, const char* what) {
  const auto fields = csv::split(line);
  if (static_cast<Index>(fields.size()) != expected) {
    throw std::runtime_error(std::string(what) + " row has " + std::to_string(fields.size()) + " values, expected " +
                             std::to_string(expected));
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) v[i] = csv::parse_double(fields[static_cast<std::size_t>(i)]);
  return v;
}

void expect_tag(std::istream& in, const char* tag) {
  if (next_line(in, tag) != tag) throw std::runtime_error(std::string("expected section '") + tag + "'");
}

}  // namespace

void write_instance_csv(std::ostream& out, const BpdnInstance& inst) {
  out << "m,n,k,seed,noise_std\n";
  out << inst.rows() << ',' << inst.cols() << ',' << inst.sparsity << ',' << inst.seed << ','
      << csv::full(inst.noise_std) << '\n';
  out << "A\n";
  for (Index i = 0; i < inst.rows(); ++i) write_row(out, inst.a.row(i).transpose());
  out << "b\n";
  write_row(out, inst.b);
  out << "x_star\n";
  write_row(out, inst.x_star);
}

BpdnInstance read_instance_csv(std::istream& in) {
  expect_tag(in, "m,n,k,seed,noise_std");
  const std::string meta_line = next_line(in, "metadata");
  const auto meta = csv::split(meta_line);
  if (meta.size() != 5) throw std::runtime_error("metadata row must have 5 fields");
  const Index m = csv::parse_integer(meta[0]);
  const Index n = csv::parse_integer(meta[1]);
  BpdnInstance inst;
  inst.sparsity = csv::parse_integer(meta[2]);
  inst.seed = static_cast<std::uint64_t>(csv::parse_integer(meta[3]));
  inst.noise_std = csv::parse_double(meta[4]);
  if (m < 1 || n < 1) throw std::runtime_error("instance dimensions must be positive");

  expect_tag(in, "A");
  inst.a.resize(m, n);
  for (Index i = 0; i < m; ++i) inst.a.row(i) = parse_row(next_line(in, "A"), n, "A").transpose();
  expect_tag(in, "b");
  inst.b = parse_row(next_line(in, "b"), m, "b");
  expect_tag(in, "x_star");
  inst.x_star = parse_row(next_line(in, "x_star"), n, "x_star");
  return inst;
}

}  // namespace b0box
