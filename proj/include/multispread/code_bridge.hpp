#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "multispread/errors.hpp"
#include "multispread/multispread.hpp"

namespace mspread {

/// m x (n t) matrix over GF(q), read as n column blocks of width t.
struct CodeMatrix {
  Field field;
  int m = 0;
  int n = 0;
  int t = 0;
  std::vector<std::vector<Elem>> rows;

  std::uint32_t q() const { return field.order(); }
  /// Column c of the matrix as a vector of F_q^m.
  Vec column(const Space& space, int c) const;
};

struct CodeParams {
  std::int64_t n = 0;
  /// Rank over t, exact as a fraction (e.g. 3/2, printed "1.5").
  std::int64_t k_num = 0;
  std::int64_t k_den = 1;
  std::int64_t w = 0;
  std::uint64_t alphabet = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  /// Intersection array {b; c} of the dual completely regular code.
  std::int64_t b = 0;
  std::int64_t c = 0;
  /// The dual code has q^cr_exponent words.
  std::uint32_t cr_base = 0;
  std::int64_t cr_exponent = 0;
  /// Set by check_one_weight when the rows are linearly dependent.
  bool rank_deficient = false;
  int rank = 0;

  std::string k_text() const;
  /// "[5,1.5,4]_4"
  std::string to_string() const;
};

/// Two message vectors whose codewords have different weights.
class NotOneWeightError : public Error {
 public:
  NotOneWeightError(Vec first, std::int64_t first_weight, Vec second, std::int64_t second_weight,
                    const std::string& what)
      : Error(Errc::NotOneWeight, what),
        first_(first),
        second_(second),
        first_weight_(first_weight),
        second_weight_(second_weight) {}

  Vec first() const noexcept { return first_; }
  Vec second() const noexcept { return second_; }
  std::int64_t first_weight() const noexcept { return first_weight_; }
  std::int64_t second_weight() const noexcept { return second_weight_; }

 private:
  Vec first_, second_;
  std::int64_t first_weight_, second_weight_;
};

/// One block per member copy: canonical basis columns, then zero columns up
/// to width t. Throws ZeroMu when mu = 0.
CodeMatrix generator_matrix(const Multispread& ms);

/// Spans of the column blocks, verified as a multispread of pseudodimension t.
Multispread multispread_from_matrix(const CodeMatrix& mat);

/// Each t-block (x_1..x_t) becomes the q^t - 1 values a_1 x_1 + ... + a_t x_t,
/// a running over the nonzero vectors of F_q^t in integer order with a_1 the
/// least significant digit. Throws WidthNotMultipleOfT.
std::vector<Elem> phi_expand(const Field& field, const std::vector<Elem>& word, int t);
CodeMatrix phi_expand(const CodeMatrix& mat);

/// Block (Hamming over F_q^t) weight of a word.
std::int64_t block_weight(const std::vector<Elem>& word, int t);
/// Number of nonzero entries.
std::int64_t hamming_weight(const std::vector<Elem>& word);

/// Enumerates all q^m messages. Throws NotOneWeightError, or
/// Error(AmbientTooLarge) when q^m > 2^24.
CodeParams check_one_weight(const CodeMatrix& mat);

/// Closed-form parameters of the code of ms.
CodeParams code_params(const Multispread& ms);

//   matrix v1
//   q=2 m=3 n=5 t=2
//   1 0 1 0 1 0 0 0 1 0
//   ...
// modulus=0x.. is required in the header when q is not prime.
CodeMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const CodeMatrix& mat);

}  // namespace mspread
