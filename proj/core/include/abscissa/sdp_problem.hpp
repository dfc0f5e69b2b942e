#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abscissa/multi_poly.hpp"

namespace abscissa {

/// One nonzero of the constraint data. For block >= 0 it is the symmetric
/// entry A(i,j) = A(j,i) (i <= j) of the row's matrix in that block, so that
/// <A, X> = sum_ij A(i,j) X(i,j) over all ordered pairs. For block == -1 it is
/// the coefficient of free variable `i` (j unused).
struct SdpEntry {
  int row = 0;
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0.0;
};

/// Describes where one multiplier of a compiled certificate lives.
struct MultiplierSlot {
  std::string name;
  bool sos = true;
  int generator = 0;
  /// Degree bound of the multiplier polynomial (2t for SOS, u for free).
  int degree_bound = 0;
  /// Gram basis (SOS) or coefficient monomials (free), over the template variables.
  std::vector<Exponent> monomials;
  int block = -1;
  int first_free = -1;
};

struct SdpLayout {
  std::vector<std::string> variables;
  std::size_t num_params = 0;
  int level = 0;
  std::vector<Exponent> row_monomials;
  /// Monomials of the decision polynomial over the parameters only.
  std::vector<Exponent> decision_monomials;
  int decision_offset = -1;
  std::vector<MultiplierSlot> multipliers;
};

/// Standard-form SDP
///   minimize  sum_k <C_k, X_k> + c^T x
///   s.t.      sum_k <A_rk, X_k> + (B x)_r = b_r  for every row r,  X_k PSD,
/// with x free. `maximize` only records that the objective was negated during
/// compilation, so that reported objectives can be flipped back.
struct SdpProblem {
  std::vector<int> block_dims;
  int num_free = 0;
  int num_rows = 0;
  std::vector<SdpEntry> entries;
  Eigen::VectorXd rhs;
  Eigen::VectorXd free_cost;
  /// Symmetric cost entries (row ignored; i <= j).
  std::vector<SdpEntry> block_cost;
  bool maximize = false;
  SdpLayout layout;

  /// Throws std::invalid_argument when indices or sizes are inconsistent.
  void validate() const;
};

/// Sparse text dump:
///   SDP blocks=<k> free=<f> rows=<r>
///   dims <n_1> ... <n_k>
///   <row> <block> <i> <j> <value>        (block -1 = free variable i, j = 0)
///   objective <block> <i> <j> <value>
///   rhs <row> <value>
void write_sdp_text(std::ostream& os, const SdpProblem& problem);

}  // namespace abscissa
