#include "poa_arena/chain_store.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace poa_arena {

std::string_view to_string(InsertResult r) noexcept {
    switch (r) {
        case InsertResult::kInserted: return "inserted";
        case InsertResult::kDuplicate: return "duplicate";
        case InsertResult::kUnknownParent: return "unknown-parent";
        case InsertResult::kBadHeight: return "bad-height";
        case InsertResult::kBadDigest: return "bad-digest";
    }
    return "unknown";
}

ChainStore::ChainStore() {
    const Block g = genesis_block();
    genesis_ = g.digest;
    best_ = g.digest;
    entries_.emplace(g.digest, Entry{g, 0, {}});
    tips_.insert(g.digest);
}

InsertResult ChainStore::extend(const Block& block) {
    if (block.digest != hash_block(block.header)) {
        return InsertResult::kBadDigest;
    }
    if (entries_.contains(block.digest)) {
        return InsertResult::kDuplicate;
    }
    auto parent = entries_.find(block.header.parent);
    if (parent == entries_.end()) {
        return InsertResult::kUnknownParent;
    }
    if (block.header.height != parent->second.block.header.height + 1) {
        return InsertResult::kBadHeight;
    }

    const std::uint64_t weight = parent->second.weight + block.header.seal_weight;
    parent->second.children.push_back(block.digest);
    tips_.erase(block.header.parent);
    tips_.insert(block.digest);
    entries_.emplace(block.digest, Entry{block, weight, {}});

    if (heavier(block.digest, best_)) {
        best_ = block.digest;
    }
    return InsertResult::kInserted;
}

std::size_t ChainStore::fork_count() const noexcept {
    const auto canonical = entries_.at(best_).block.header.height + 1;
    return entries_.size() - static_cast<std::size_t>(canonical);
}

const Block* ChainStore::find(Digest d) const noexcept {
    auto it = entries_.find(d);
    return it == entries_.end() ? nullptr : &it->second.block;
}

const Block& ChainStore::at(Digest d) const {
    auto it = entries_.find(d);
    if (it == entries_.end()) {
        throw std::out_of_range("chain store: unknown digest " + std::to_string(d.value));
    }
    return it->second.block;
}

std::uint64_t ChainStore::chain_weight(Digest d) const {
    auto it = entries_.find(d);
    if (it == entries_.end()) {
        throw std::out_of_range("chain store: unknown digest " + std::to_string(d.value));
    }
    return it->second.weight;
}

std::span<const Digest> ChainStore::children(Digest d) const {
    auto it = entries_.find(d);
    if (it == entries_.end()) {
        return {};
    }
    return it->second.children;
}

bool ChainStore::heavier(Digest a, Digest b) const {
    const Entry& ea = entries_.at(a);
    const Entry& eb = entries_.at(b);
    if (ea.weight != eb.weight) {
        return ea.weight > eb.weight;
    }
    if (ea.block.header.height != eb.block.header.height) {
        return ea.block.header.height > eb.block.header.height;
    }
    return a.value < b.value;
}

std::vector<Digest> ChainStore::path_from_genesis(Digest tip) const {
    std::vector<Digest> path;
    path.reserve(at(tip).header.height + 1);
    Digest cur = tip;
    while (true) {
        path.push_back(cur);
        if (cur == genesis_) {
            break;
        }
        cur = at(cur).header.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Digest ChainStore::ancestor_at(Digest d, std::uint64_t height) const {
    const Block* b = &at(d);
    if (height > b->header.height) {
        throw std::out_of_range("chain store: ancestor height above block height");
    }
    while (b->header.height > height) {
        b = &at(b->header.parent);
    }
    return b->digest;
}

Digest ChainStore::common_ancestor(Digest a, Digest b) const {
    const Block* x = &at(a);
    const Block* y = &at(b);
    while (x->header.height > y->header.height) x = &at(x->header.parent);
    while (y->header.height > x->header.height) y = &at(y->header.parent);
    while (x->digest != y->digest) {
        x = &at(x->header.parent);
        y = &at(y->header.parent);
    }
    return x->digest;
}

bool ChainStore::is_ancestor(Digest ancestor, Digest descendant) const {
    const auto h = at(ancestor).header.height;
    if (h > at(descendant).header.height) {
        return false;
    }
    return ancestor_at(descendant, h) == ancestor;
}

}  // namespace poa_arena
