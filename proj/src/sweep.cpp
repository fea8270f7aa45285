#include "baire/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "baire/errors.hpp"

namespace baire {

CompiledFormula::CompiledFormula(const Formula& f) {
  if (!is_desugared(f)) throw PreconditionError("compiling needs a desugared formula");
  const auto info = subformulas(f);
  variables_ = info.variables;
  std::unordered_map<Formula, std::uint32_t, FormulaHash> index;
  for (const auto& g : info.subformulas) {
    Instr ins{g.op()};
    switch (g.op()) {
      case Op::Var:
        ins.a = static_cast<std::uint32_t>(
            std::lower_bound(variables_.begin(), variables_.end(), g.var_index()) -
            variables_.begin());
        break;
      case Op::And:
        ins.a = index.at(g.left());
        ins.b = index.at(g.right());
        break;
      default:
        ins.a = index.at(g.child());
        break;
    }
    index.emplace(g, static_cast<std::uint32_t>(program_.size()));
    program_.push_back(ins);
  }
}

void decode_assignment(std::uint64_t index, int atoms, std::size_t slots, std::uint64_t* out) {
  const std::uint64_t mask = (std::uint64_t{1} << atoms) - 1;
  for (std::size_t j = slots; j-- > 0;) {
    out[j] = index & mask;
    index >>= atoms;
  }
}

namespace {

void require_table(const ClosureAlgebra& alg) {
  if (alg.closure_table().empty())
    throw PreconditionError("sweeps need an enumerable algebra closed under its closure");
}

}  // namespace

std::optional<std::uint64_t> sweep_serial(const ClosureAlgebra& alg, const CompiledFormula& f,
                                          std::uint64_t begin, std::uint64_t end) {
  require_table(alg);
  const auto& table = alg.closure_table();
  const std::uint64_t top = (std::uint64_t{1} << alg.atom_count()) - 1;
  std::vector<std::uint64_t> slots(f.slot_count() + 1);
  std::vector<std::uint64_t> scratch(f.program().size());
  for (auto i = begin; i < end; ++i) {
    decode_assignment(i, alg.atom_count(), f.slot_count(), slots.data());
    if (f.eval(table, top, slots.data(), scratch.data()) != top) return i;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> sweep_parallel(const ClosureAlgebra& alg, const CompiledFormula& f,
                                            std::uint64_t begin, std::uint64_t end) {
  require_table(alg);
  if (end <= begin) return std::nullopt;
  const auto& table = alg.closure_table();
  const int atoms = alg.atom_count();
  const std::uint64_t top = (std::uint64_t{1} << atoms) - 1;
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (end - begin + kChunk - 1) / kChunk;
  const auto none = ~std::uint64_t{0};
  std::atomic<std::uint64_t> best{none};

#pragma omp parallel
  {
    std::vector<std::uint64_t> slots(f.slot_count() + 1);
    std::vector<std::uint64_t> scratch(f.program().size());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t lo = begin + static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t hi = std::min(end, lo + kChunk);
      if (lo >= best.load(std::memory_order_relaxed)) continue;
      for (auto i = lo; i < hi; ++i) {
        decode_assignment(i, atoms, f.slot_count(), slots.data());
        if (f.eval(table, top, slots.data(), scratch.data()) != top) {
          auto cur = best.load(std::memory_order_relaxed);
          while (i < cur && !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
          }
          break;
        }
      }
    }
  }
  const auto b = best.load();
  if (b == none) return std::nullopt;
  return b;
}

}  // namespace baire
