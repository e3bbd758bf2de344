#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dlcat/int_matrix.hpp"
#include "json.hpp"

namespace dlcat {

// Root datum of a connected reductive group together with the diagram
// automorphism that twists its Frobenius.
//
// Conventions: cartan(i, j) = <coroot_i, root_j>. Columns of `coroots` are the
// simple coroots in X_* = Z^rank; columns of `roots` are the simple roots in
// the dual basis of X^*. The simple reflection s_i acts on X_* by
// x -> x - <root_i, x> coroot_i.
struct RootDatum {
  std::string label;
  int rank = 0;
  IntMatrix cartan;      // n x n
  IntMatrix coroots;     // rank x n
  IntMatrix roots;       // rank x n
  std::vector<int> tau;  // permutation of the simple roots
  IntMatrix tau_matrix;  // rank x rank, action on X_*

  int num_simple() const { return static_cast<int>(cartan.rows()); }
  bool is_split() const;
  // Order of tau on the datum (1 for split data).
  int tau_order() const;

  // Throws ValidationError on malformed data.
  void validate() const;
};

std::vector<std::string> preset_names();
// Throws ValidationError for an unknown label.
RootDatum make_preset(std::string_view label);

// JSON schema: {"label", "rank"?, "cartan", "coroots", "roots"?, "tau"?,
// "tau_matrix"?}. Missing roots are solved from cartan and coroots; a missing
// tau_matrix is derived from tau when the coroots span X_*.
RootDatum root_datum_from_json(const nlohmann::json& j);
nlohmann::json root_datum_to_json(const RootDatum& d);

}  // namespace dlcat
