#include "dlcat/root_datum.hpp"

#include <map>
#include <numeric>

#include "dlcat/error.hpp"

namespace dlcat {

namespace {

// Simply connected datum: X_* is spanned by the simple coroots.
RootDatum simply_connected(std::string label, const IntMatrix& cartan,
                           std::vector<int> tau = {}) {
  const int n = static_cast<int>(cartan.rows());
  RootDatum d;
  d.label = std::move(label);
  d.rank = n;
  d.cartan = cartan;
  d.coroots = IntMatrix::identity(n);
  d.roots = cartan;  // column j holds <coroot_i, root_j>
  if (tau.empty()) {
    tau.resize(n);
    std::iota(tau.begin(), tau.end(), 0);
  }
  d.tau = tau;
  d.tau_matrix = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) d.tau_matrix(tau[i], i) = 1;
  return d;
}

// Adjoint datum: X^* is spanned by the simple roots.
RootDatum adjoint(std::string label, const IntMatrix& cartan) {
  const int n = static_cast<int>(cartan.rows());
  RootDatum d;
  d.label = std::move(label);
  d.rank = n;
  d.cartan = cartan;
  d.roots = IntMatrix::identity(n);
  d.coroots = cartan.transpose();
  d.tau.resize(n);
  std::iota(d.tau.begin(), d.tau.end(), 0);
  d.tau_matrix = IntMatrix::identity(n);
  return d;
}

const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kA3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IntMatrix kB2{{2, -2}, {-1, 2}};
const IntMatrix kB3{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
const IntMatrix kG2{{2, -1}, {-3, 2}};

IntMatrix matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<long>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError(std::string(what) + " row must be an array");
    std::vector<long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ValidationError(std::string(what) + " entries must be integers");
      r.push_back(x.get<long>());
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    out.push_back(row);
  }
  return out;
}

// Solve coroots^T * roots = cartan for integral roots (square invertible case).
IntMatrix solve_roots(const IntMatrix& coroots, const IntMatrix& cartan) {
  const std::size_t r = coroots.rows();
  const std::size_t n = coroots.cols();
  if (r != n)
    throw ValidationError("roots must be given explicitly when rank differs from the number of simple roots");
  IntMatrix ct = coroots.transpose();
  BigInt det = ct.determinant();
  if (det == 0) throw ValidationError("coroot matrix is singular; give roots explicitly");
  // Cramer's rule column by column.
  IntMatrix roots(r, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < r; ++i) {
      IntMatrix m = ct;
      for (std::size_t k = 0; k < n; ++k) m(k, i) = cartan(k, col);
      BigInt num = m.determinant();
      if (num % det != 0) throw ValidationError("roots are not integral in the given lattice");
      roots(i, col) = num / det;
    }
  }
  return roots;
}

}  // namespace

bool RootDatum::is_split() const {
  for (int i = 0; i < static_cast<int>(tau.size()); ++i)
    if (tau[i] != i) return false;
  return tau_matrix.is_identity();
}

int RootDatum::tau_order() const {
  IntMatrix p = tau_matrix;
  for (int k = 1; k <= 64; ++k) {
    if (p.is_identity()) return k;
    p = p * tau_matrix;
  }
  throw ValidationError("diagram automorphism has no finite order");
}

void RootDatum::validate() const {
  const std::size_t n = cartan.rows();
  if (cartan.cols() != n) throw ValidationError("Cartan matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && cartan(i, j) != 2) throw ValidationError("Cartan diagonal must be 2");
      if (i != j && cartan(i, j) > 0) throw ValidationError("Cartan off-diagonal entries must be <= 0");
      if (i != j && (cartan(i, j) == 0) != (cartan(j, i) == 0))
        throw ValidationError("Cartan zero pattern must be symmetric");
    }
  if (rank < 0) throw ValidationError("negative rank");
  const auto r = static_cast<std::size_t>(rank);
  if (coroots.rows() != r || coroots.cols() != n)
    throw ValidationError("coroot matrix must be rank x n");
  if (roots.rows() != r || roots.cols() != n)
    throw ValidationError("root matrix must be rank x n");
  IntMatrix pairing = coroots.transpose() * roots;
  if (!(pairing == cartan)) throw ValidationError("roots and coroots do not pair to the Cartan matrix");
  if (tau.size() != n) throw ValidationError("tau must permute the simple roots");
  std::vector<bool> seen(n, false);
  for (int t : tau) {
    if (t < 0 || static_cast<std::size_t>(t) >= n || seen[t])
      throw ValidationError("tau is not a permutation");
    seen[t] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cartan(tau[i], tau[j]) != cartan(i, j))
        throw ValidationError("tau does not preserve the Cartan matrix");
  if (tau_matrix.rows() != r || tau_matrix.cols() != r)
    throw ValidationError("tau_matrix must be rank x rank");
  if (r > 0 && abs(tau_matrix.determinant()) != 1)
    throw ValidationError("tau_matrix must be invertible over Z");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      BigInt image = 0;
      for (std::size_t m = 0; m < r; ++m) image += tau_matrix(k, m) * coroots(m, i);
      if (image != coroots(k, tau[i]))
        throw ValidationError("tau_matrix does not permute the simple coroots like tau");
    }
  (void)tau_order();
}

std::vector<std::string> preset_names() {
  return {"A1", "A1-adjoint", "A2", "A2-adjoint", "A3", "B2", "B3", "G2", "GL2", "T1", "2A2"};
}

RootDatum make_preset(std::string_view label) {
  RootDatum d;
  if (label == "A1") {
    d = simply_connected("A1", kA1);
  } else if (label == "A1-adjoint") {
    d = adjoint("A1-adjoint", kA1);
  } else if (label == "A2") {
    d = simply_connected("A2", kA2);
  } else if (label == "A2-adjoint") {
    d = adjoint("A2-adjoint", kA2);
  } else if (label == "A3") {
    d = simply_connected("A3", kA3);
  } else if (label == "B2") {
    d = simply_connected("B2", kB2);
  } else if (label == "B3") {
    d = simply_connected("B3", kB3);
  } else if (label == "G2") {
    d = simply_connected("G2", kG2);
  } else if (label == "GL2") {
    d.label = "GL2";
    d.rank = 2;
    d.cartan = kA1;
    d.coroots = IntMatrix{{1}, {-1}};
    d.roots = IntMatrix{{1}, {-1}};
    d.tau = {0};
    d.tau_matrix = IntMatrix::identity(2);
  } else if (label == "T1") {
    d.label = "T1";
    d.rank = 1;
    d.cartan = IntMatrix(0, 0);
    d.coroots = IntMatrix(1, 0);
    d.roots = IntMatrix(1, 0);
    d.tau_matrix = IntMatrix::identity(1);
  } else if (label == "2A2") {
    d = simply_connected("2A2", kA2, {1, 0});
  } else {
    throw ValidationError("unknown preset '" + std::string(label) + "'");
  }
  d.validate();
  return d;
}

RootDatum root_datum_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("datum must be a JSON object");
  RootDatum d;
  d.label = j.value("label", std::string("custom"));
  if (!j.contains("cartan") || !j.contains("coroots"))
    throw ValidationError("datum needs 'cartan' and 'coroots'");
  d.cartan = matrix_from_json(j.at("cartan"), "cartan");
  const auto& co = j.at("coroots");
  if (co.is_array() && !co.empty()) {
    d.coroots = matrix_from_json(co, "coroots");
    d.rank = static_cast<int>(d.coroots.rows());
  }
  if (j.contains("rank")) d.rank = j.at("rank").get<int>();
  if (d.coroots.rows() == 0) d.coroots = IntMatrix(d.rank, d.cartan.rows());
  if (d.cartan.rows() != d.cartan.cols()) throw ValidationError("Cartan matrix must be square");
  d.roots = j.contains("roots") ? matrix_from_json(j.at("roots"), "roots")
                                : solve_roots(d.coroots, d.cartan);
  const std::size_t n = d.cartan.rows();
  if (j.contains("tau")) {
    d.tau = j.at("tau").get<std::vector<int>>();
  } else {
    d.tau.resize(n);
    std::iota(d.tau.begin(), d.tau.end(), 0);
  }
  if (j.contains("tau_matrix")) {
    d.tau_matrix = matrix_from_json(j.at("tau_matrix"), "tau_matrix");
  } else {
    bool trivial = true;
    for (std::size_t i = 0; i < d.tau.size(); ++i) trivial = trivial && d.tau[i] == static_cast<int>(i);
    if (trivial) {
      d.tau_matrix = IntMatrix::identity(d.rank);
    } else if (d.coroots.rows() == n && d.coroots.determinant() != 0 &&
               abs(d.coroots.determinant()) == 1) {
      // T * C = C * P, so T = C P C^-1 (C unimodular).
      IntMatrix p(n, n);
      for (std::size_t i = 0; i < n; ++i) p(d.tau[i], i) = 1;
      IntMatrix cinv(n, n);
      const BigInt det = d.coroots.determinant();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          IntMatrix minor(n - 1, n - 1);
          for (std::size_t a = 0, ra = 0; a < n; ++a) {
            if (a == k) continue;
            for (std::size_t b = 0, cb = 0; b < n; ++b) {
              if (b == i) continue;
              minor(ra, cb++) = d.coroots(a, b);
            }
            ++ra;
          }
          BigInt cof = minor.determinant();
          if ((i + k) % 2) cof = -cof;
          cinv(i, k) = cof / det;
        }
      d.tau_matrix = d.coroots * p * cinv;
    } else {
      throw ValidationError("tau_matrix must be given for this datum");
    }
  }
  d.validate();
  return d;
}

nlohmann::json root_datum_to_json(const RootDatum& d) {
  nlohmann::json j;
  j["label"] = d.label;
  j["rank"] = d.rank;
  j["cartan"] = matrix_to_json(d.cartan);
  j["coroots"] = matrix_to_json(d.coroots);
  j["roots"] = matrix_to_json(d.roots);
  j["tau"] = d.tau;
  j["tau_matrix"] = matrix_to_json(d.tau_matrix);
  return j;
}

}  // namespace dlcat
