#include "causalc/layout.hpp"

#include <algorithm>

namespace causalc {

std::string to_string(const Slot &s) {
    return "(tape " + std::to_string(s.tape) + ", node " + std::to_string(s.node) + ")";
}

Support::Support(std::vector<Slot> slots) : slots_(std::move(slots)) {
    std::sort(slots_.begin(), slots_.end());
    if (std::adjacent_find(slots_.begin(), slots_.end()) != slots_.end())
        throw DimensionError("support contains duplicate slots");
}

Support Support::on_tape(std::span<const int> nodes, int tape) {
    std::vector<Slot> slots;
    slots.reserve(nodes.size());
    for (int n : nodes)
        slots.push_back({tape, n});
    return Support(std::move(slots));
}

bool Support::contains(const Slot &s) const {
    return std::binary_search(slots_.begin(), slots_.end(), s);
}

bool Support::contains_all(const Support &other) const {
    return std::includes(slots_.begin(), slots_.end(), other.slots_.begin(), other.slots_.end());
}

bool Support::intersects(const Support &other) const {
    auto a = slots_.begin();
    auto b = other.slots_.begin();
    while (a != slots_.end() && b != other.slots_.end()) {
        if (*a == *b)
            return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

Support Support::unite(const Support &a, const Support &b) {
    std::vector<Slot> merged;
    merged.reserve(a.size() + b.size());
    std::set_union(a.slots_.begin(), a.slots_.end(), b.slots_.begin(), b.slots_.end(),
                   std::back_inserter(merged));
    Support out;
    out.slots_ = std::move(merged);
    return out;
}

SpaceLayout SpaceLayout::create(std::vector<std::pair<Slot, Index>> slot_dims) {
    std::sort(slot_dims.begin(), slot_dims.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    SpaceLayout out;
    out.slots_.reserve(slot_dims.size());
    out.dims_.reserve(slot_dims.size());
    for (std::size_t i = 0; i < slot_dims.size(); ++i) {
        const auto &[slot, dim] = slot_dims[i];
        if (dim < 1)
            throw DimensionError("slot " + to_string(slot) + " has non-positive dimension");
        if (i > 0 && slot == slot_dims[i - 1].first)
            throw DimensionError("layout contains duplicate slot " + to_string(slot));
        out.slots_.push_back(slot);
        out.dims_.push_back(dim);
    }
    out.strides_.assign(out.dims_.size(), 1);
    out.total_dim_ = 1;
    for (auto i = static_cast<std::ptrdiff_t>(out.dims_.size()) - 1; i >= 0; --i) {
        out.strides_[static_cast<std::size_t>(i)] = out.total_dim_;
        out.total_dim_ *= out.dims_[static_cast<std::size_t>(i)];
    }
    return out;
}

std::optional<int> SpaceLayout::find(const Slot &s) const {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), s);
    if (it == slots_.end() || *it != s)
        return std::nullopt;
    return static_cast<int>(it - slots_.begin());
}

std::vector<int> SpaceLayout::positions_of(const Support &support) const {
    std::vector<int> out;
    out.reserve(support.size());
    for (const Slot &s : support.slots()) {
        auto pos = find(s);
        if (!pos)
            throw DimensionError("slot " + to_string(s) + " is not part of the layout");
        out.push_back(*pos);
    }
    return out;
}

Support SpaceLayout::full_support() const {
    Support out;
    return Support(slots_);
}

Support SpaceLayout::complement(const Support &support) const {
    std::vector<Slot> rest;
    for (const Slot &s : slots_)
        if (!support.contains(s))
            rest.push_back(s);
    // slots that are not part of this layout at all are a caller bug
    for (const Slot &s : support.slots())
        if (!find(s))
            throw DimensionError("slot " + to_string(s) + " is not part of the layout");
    return Support(std::move(rest));
}

SpaceLayout SpaceLayout::sub_layout(const Support &support) const {
    std::vector<std::pair<Slot, Index>> slot_dims;
    slot_dims.reserve(support.size());
    for (int pos : positions_of(support))
        slot_dims.emplace_back(slots_[static_cast<std::size_t>(pos)],
                               dims_[static_cast<std::size_t>(pos)]);
    return create(std::move(slot_dims));
}

Index SpaceLayout::compose(std::span<const Index> digits) const {
    if (static_cast<int>(digits.size()) != slot_count())
        throw DimensionError("digit count does not match layout slot count");
    Index out = 0;
    for (int i = 0; i < slot_count(); ++i) {
        const auto p = static_cast<std::size_t>(i);
        if (digits[p] < 0 || digits[p] >= dims_[p])
            throw DimensionError("digit out of range at slot position " + std::to_string(i));
        out += digits[p] * strides_[p];
    }
    return out;
}

SupportIndexer::SupportIndexer(const SpaceLayout &full, const Support &support) {
    const auto positions = full.positions_of(support);

    // Support configuration offsets, first support slot most significant.
    sub_dim = 1;
    for (int pos : positions)
        sub_dim *= full.dim(pos);
    offsets.assign(static_cast<std::size_t>(sub_dim), 0);
    for (Index k = 0; k < sub_dim; ++k) {
        Index rem = k;
        Index off = 0;
        for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
            const Index d = full.dim(*it);
            off += (rem % d) * full.stride(*it);
            rem /= d;
        }
        offsets[static_cast<std::size_t>(k)] = off;
    }

    // Enumerate complement configurations as base indices.
    std::vector<int> rest;
    std::vector<bool> in_support(static_cast<std::size_t>(full.slot_count()), false);
    for (int pos : positions)
        in_support[static_cast<std::size_t>(pos)] = true;
    for (int pos = 0; pos < full.slot_count(); ++pos)
        if (!in_support[static_cast<std::size_t>(pos)])
            rest.push_back(pos);

    Index rest_dim = 1;
    for (int pos : rest)
        rest_dim *= full.dim(pos);
    bases.assign(static_cast<std::size_t>(rest_dim), 0);
    for (Index k = 0; k < rest_dim; ++k) {
        Index rem = k;
        Index base = 0;
        for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
            const Index d = full.dim(*it);
            base += (rem % d) * full.stride(*it);
            rem /= d;
        }
        bases[static_cast<std::size_t>(k)] = base;
    }
}

Index SupportIndexer::fill_base(const SpaceLayout &full, const Support &support,
                                std::span<const Index> digits_by_position) {
    if (static_cast<int>(digits_by_position.size()) != full.slot_count())
        throw DimensionError("fill digit count does not match layout slot count");
    Index base = 0;
    for (int pos = 0; pos < full.slot_count(); ++pos) {
        if (support.contains(full.slot(pos)))
            continue;
        const Index d = digits_by_position[static_cast<std::size_t>(pos)];
        if (d < 0 || d >= full.dim(pos))
            throw DimensionError("fill digit out of range at slot position " + std::to_string(pos));
        base += d * full.stride(pos);
    }
    return base;
}

} // namespace causalc
