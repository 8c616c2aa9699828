#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gwpo/algebra.hpp"
#include "gwpo/encoder.hpp"
#include "gwpo/path_orders.hpp"
#include "gwpo/term.hpp"

namespace gwpo {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of a termination proof: the order, its algebra and precedence.
struct Certificate {
  OrderKind order = OrderKind::gwpo;
  Algebra algebra;
  Precedence precedence;
};

/// Text form:
///
///   order gwpo
///   interpretation linear
///   precedence half:1 bits:1 s:0
///   s(x0) = 1 + x0
///   s#(x0) = 0
///
/// Blank lines, lines starting with ';' and a leading YES/NO/MAYBE line are
/// ignored, so the proof block printed by the prover reads back as is.
std::string print_certificate(const Certificate& c);

/// Symbols are resolved against the signature of `trs`; a trailing '#'
/// selects the marked companion.
Certificate parse_certificate(const std::string& text, const Trs& trs);

struct VerifyResult {
  bool ok = false;
  std::string diagnostic;                 // empty when ok
  std::vector<Derivation> derivations;    // one per rule when ok
};

/// Independent check with the concrete orders. For kbo, lpo and wpo the
/// algebra must also be simple with f# = f (kbo: linear and admissible,
/// lpo: max/plus projections); gwpo only needs the algebra to cover the
/// signature.
VerifyResult verify_certificate(const Trs& trs, const Certificate& c);

}  // namespace gwpo
