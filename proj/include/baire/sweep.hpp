#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "baire/algebra.hpp"
#include "baire/formula.hpp"

namespace baire {

/// A desugared formula flattened into a straight-line program over the
/// distinct subformulas, evaluated in the coordinates of a tabled algebra.
class CompiledFormula {
public:
  explicit CompiledFormula(const Formula& f);

  struct Instr {
    Op op;
    std::uint32_t a = 0;  // variable slot for Var, operand index otherwise
    std::uint32_t b = 0;
  };

  const std::vector<Instr>& program() const { return program_; }
  /// Variable indices in slot order (ascending).
  const std::vector<unsigned>& variables() const { return variables_; }
  std::size_t slot_count() const { return variables_.size(); }

  /// Runs the program over bitmask values with `diamond` as the closure.
  /// `scratch` must hold program().size() entries.
  template <typename Diamond>
  std::uint64_t run(std::uint64_t top, const std::uint64_t* slots, std::uint64_t* scratch,
                    Diamond diamond) const {
    const auto n = program_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ins = program_[i];
      switch (ins.op) {
        case Op::Var: scratch[i] = slots[ins.a]; break;
        case Op::And: scratch[i] = scratch[ins.a] & scratch[ins.b]; break;
        case Op::Not: scratch[i] = top ^ scratch[ins.a]; break;
        case Op::Diamond: scratch[i] = diamond(scratch[ins.a]); break;
        case Op::Forall: scratch[i] = scratch[ins.a] == top ? top : 0; break;
        default: break;
      }
    }
    return scratch[n - 1];
  }

  /// Value of the root in coordinates, with closure read from a table.
  std::uint64_t eval(const std::vector<std::uint32_t>& closure, std::uint64_t top,
                     const std::uint64_t* slots, std::uint64_t* scratch) const {
    return run(top, slots, scratch, [&](std::uint64_t x) -> std::uint64_t { return closure[x]; });
  }

private:
  std::vector<Instr> program_;
  std::vector<unsigned> variables_;
};

/// Assignment index i is read as `slots` digits of `atoms` bits each, slot 0
/// being the most significant, so lower indices vary later variables first.
void decode_assignment(std::uint64_t index, int atoms, std::size_t slots, std::uint64_t* out);

/// Reference sweep: least assignment index in [begin, end) whose value is
/// not top, scanning in order.
std::optional<std::uint64_t> sweep_serial(const ClosureAlgebra& alg, const CompiledFormula& f,
                                          std::uint64_t begin, std::uint64_t end);

/// OpenMP sweep with the same contract: chunks are scanned concurrently and
/// the least failing index wins, so the answer matches sweep_serial.
std::optional<std::uint64_t> sweep_parallel(const ClosureAlgebra& alg, const CompiledFormula& f,
                                            std::uint64_t begin, std::uint64_t end);

}  // namespace baire
