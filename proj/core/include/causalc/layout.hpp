#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causalc/errors.hpp"

namespace causalc {

using Index = std::int64_t;

/// Tape ids. Base (single-tape) spaces live entirely on the computed tape.
inline constexpr int kComputedTape = 0;
inline constexpr int kUncomputedTape = 1;

/// One tensor factor: a (tape, node) pair. Canonical ordering is ascending
/// (node, tape), so the two tapes of a node sit next to each other.
struct Slot {
    int tape = 0;
    int node = 0;

    friend constexpr bool operator==(const Slot &, const Slot &) = default;
    friend constexpr auto operator<=>(const Slot &a, const Slot &b) {
        if (auto c = a.node <=> b.node; c != 0)
            return c;
        return a.tape <=> b.tape;
    }
};

std::string to_string(const Slot &s);

/// An ordered set of slots identifying a tensor subfactor. Slots are kept
/// sorted in canonical order and must be pairwise distinct.
class Support {
  public:
    Support() = default;
    explicit Support(std::vector<Slot> slots);

    /// Convenience: all the given nodes on a single tape.
    static Support on_tape(std::span<const int> nodes, int tape = kComputedTape);
    static Support single(Slot s) { return Support({s}); }

    const std::vector<Slot> &slots() const noexcept { return slots_; }
    std::size_t size() const noexcept { return slots_.size(); }
    bool empty() const noexcept { return slots_.empty(); }
    bool contains(const Slot &s) const;
    bool contains_all(const Support &other) const;
    bool intersects(const Support &other) const;

    static Support unite(const Support &a, const Support &b);

    friend bool operator==(const Support &, const Support &) = default;

  private:
    std::vector<Slot> slots_; // sorted, unique
};

/// The tensor-product space of an ordered list of slots. The slot order is
/// canonical (ascending node, then tape) and the first slot is the most
/// significant digit of the mixed-radix basis index.
class SpaceLayout {
  public:
    SpaceLayout() = default;

    /// Builds a layout from (slot, dim) pairs; sorts into canonical order.
    static SpaceLayout create(std::vector<std::pair<Slot, Index>> slot_dims);

    Index total_dim() const noexcept { return total_dim_; }
    int slot_count() const noexcept { return static_cast<int>(slots_.size()); }
    const std::vector<Slot> &slots() const noexcept { return slots_; }
    const std::vector<Index> &dims() const noexcept { return dims_; }
    const std::vector<Index> &strides() const noexcept { return strides_; }
    Slot slot(int pos) const { return slots_.at(static_cast<std::size_t>(pos)); }
    Index dim(int pos) const { return dims_.at(static_cast<std::size_t>(pos)); }
    Index stride(int pos) const { return strides_.at(static_cast<std::size_t>(pos)); }

    /// Position of a slot in canonical order, if present.
    std::optional<int> find(const Slot &s) const;
    /// Positions of every slot of `support`; throws DimensionError on a miss.
    std::vector<int> positions_of(const Support &support) const;

    Support full_support() const;
    Support complement(const Support &support) const;
    /// The layout of the subfactor identified by `support`.
    SpaceLayout sub_layout(const Support &support) const;

    /// Mixed-radix digit of `index` at slot position `pos`.
    Index digit(Index index, int pos) const {
        return (index / strides_[static_cast<std::size_t>(pos)]) % dims_[static_cast<std::size_t>(pos)];
    }
    /// Replace the digit at `pos` (used heavily by the localization test).
    Index with_digit(Index index, int pos, Index value) const {
        const auto p = static_cast<std::size_t>(pos);
        return index + (value - digit(index, pos)) * strides_[p];
    }
    Index compose(std::span<const Index> digits) const;

    friend bool operator==(const SpaceLayout &, const SpaceLayout &) = default;

  private:
    std::vector<Slot> slots_;
    std::vector<Index> dims_;
    std::vector<Index> strides_; // strides_[i] = product of dims_[j], j > i
    Index total_dim_ = 1;
};

/// Precomputed gather/scatter machinery for acting on a support of a layout:
/// every full-space index splits as base + offset(k) with `base` ranging over
/// the complement configurations and k over the support configurations.
struct SupportIndexer {
    SupportIndexer(const SpaceLayout &full, const Support &support);

    /// offsets[k] = sum of digit strides for support configuration k,
    /// with the support's own canonical order / mixed radix.
    std::vector<Index> offsets;
    /// One base index per off-support configuration (all support digits 0).
    std::vector<Index> bases;
    /// Like `bases` but with the off-support digits pinned to `fill` values
    /// instead of enumerated (see fill_base()).
    Index sub_dim = 1;

    /// Base index with every off-support slot set to the given digit values
    /// (indexed by slot position in `full`).
    static Index fill_base(const SpaceLayout &full, const Support &support,
                           std::span<const Index> digits_by_position);
};

} // namespace causalc
