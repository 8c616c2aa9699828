#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "gwpo/algebra.hpp"
#include "gwpo/constraint.hpp"
#include "gwpo/term.hpp"

namespace gwpo {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OrderKind { kbo, lpo, wpo, gwpo };

const char* to_string(OrderKind k);
std::optional<OrderKind> parse_order_kind(const std::string& s);
std::optional<InterpKind> parse_interp_kind(const std::string& s);

/// The family of algebras and precedences a search explores.
///
/// KBO, LPO and WPO are restrictions of the GWPO space: simple algebras with
/// f# interpreted as f. KBO searches linear weights with admissibility, LPO
/// the max/plus algebra max{0, x1, ..., xn}.
struct SearchSpace {
  OrderKind order = OrderKind::gwpo;
  InterpKind interp = InterpKind::linear;
  std::int64_t const_bound = 4;
  bool share_marked = false;
  bool force_simple = false;

  /// A space with the flags the order requires. Throws std::invalid_argument
  /// for kbo with max/plus or lpo with linear.
  static SearchSpace make(OrderKind order, InterpKind interp, std::int64_t const_bound = 4);
  /// Throws std::invalid_argument if the flags contradict the order.
  void validate() const;
  /// True when the concrete checker for this space is the WPO recursion.
  bool uses_wpo() const { return order != OrderKind::gwpo; }
  std::string name() const;
};

struct EncodeOptions {
  std::size_t max_depth = 64;
};

struct Encoding {
  SearchSpace space;
  std::vector<Symbol> signature;
  ConstraintSystem system;  // system.root is the orientation formula
};

/// Orientation constraints for every rule of `trs` under `space`. Any model
/// of the result decodes to parameters under which the concrete order
/// orients every rule.
Encoding encode_orientation(const Trs& trs, const SearchSpace& space, const EncodeOptions& opts = {});

struct VariableCondition {
  bool violated = false;
  std::optional<std::size_t> rule;  // first offending rule
  std::string reason;
};

/// Flags a rule with a variable left-hand side or a right-hand side variable
/// missing on the left; such systems do not terminate.
VariableCondition encode_variable_condition(const Trs& trs);

}  // namespace gwpo
