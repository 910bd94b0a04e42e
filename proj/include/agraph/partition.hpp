// agraph - edge structure of finite idempotent algebras
//
// Partitions of {0, ..., n-1} in normalized form. Every congruence, quotient
// and witnessing relation in the library is carried by this type.

#ifndef AGRAPH_PARTITION_HPP_
#define AGRAPH_PARTITION_HPP_

#include <algorithm>  // for min, sort
#include <cstddef>    // for size_t
#include <numeric>    // for iota
#include <string>     // for string, to_string
#include <vector>     // for vector

#include "error.hpp"  // for error

namespace agraph {

  // Tiny union-find used for partition construction and Cg closure.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), 0);
    }

    std::size_t find(std::size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    // Returns true when the two classes were distinct.
    bool unite(std::size_t x, std::size_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      // keep the least member as the root, so normalization is free
      if (y < x) {
        std::swap(x, y);
      }
      _parent[y] = x;
      return true;
    }

    std::size_t size() const noexcept {
      return _parent.size();
    }

   private:
    std::vector<std::size_t> _parent;
  };

  // A partition stored as a block-id vector where the id of every block is its
  // least member, so block_id[block_id[x]] == block_id[x].
  class Partition {
   public:
    Partition() = default;

    // Accepts any labelling and normalizes it.
    explicit Partition(std::vector<std::size_t> const& labels)
        : _block(labels.size()) {
      std::vector<std::size_t> first(labels.size() + 1, npos);
      std::size_t              max_label = 0;
      for (auto l : labels) {
        max_label = std::max(max_label, l);
      }
      first.assign(max_label + 1, npos);
      for (std::size_t x = 0; x < labels.size(); ++x) {
        if (first[labels[x]] == npos) {
          first[labels[x]] = x;
        }
        _block[x] = first[labels[x]];
      }
    }

    static Partition equality(std::size_t n) {
      std::vector<std::size_t> v(n);
      std::iota(v.begin(), v.end(), 0);
      return Partition(v);
    }

    static Partition total(std::size_t n) {
      return Partition(std::vector<std::size_t>(n, 0));
    }

    static Partition from_union_find(UnionFind& uf) {
      std::vector<std::size_t> v(uf.size());
      for (std::size_t x = 0; x < v.size(); ++x) {
        v[x] = uf.find(x);
      }
      return Partition(v);
    }

    // Builds a partition from explicit blocks; elements not mentioned become
    // singletons.
    static Partition from_blocks(std::size_t                                  n,
                                 std::vector<std::vector<std::size_t>> const& blocks) {
      UnionFind uf(n);
      for (auto const& b : blocks) {
        for (auto x : b) {
          if (x >= n) {
            throw error("partition block element " + std::to_string(x)
                        + " out of range for size " + std::to_string(n));
          }
          uf.unite(b.front(), x);
        }
      }
      return from_union_find(uf);
    }

    std::size_t size() const noexcept {
      return _block.size();
    }

    std::size_t block_id(std::size_t x) const {
      return _block[x];
    }

    std::vector<std::size_t> const& block_ids() const noexcept {
      return _block;
    }

    bool related(std::size_t x, std::size_t y) const {
      return _block[x] == _block[y];
    }

    std::size_t number_of_blocks() const {
      std::size_t r = 0;
      for (std::size_t x = 0; x < _block.size(); ++x) {
        r += (_block[x] == x);
      }
      return r;
    }

    bool is_equality() const {
      return number_of_blocks() == size();
    }

    bool is_total() const {
      return number_of_blocks() <= 1;
    }

    // Sorted list of sorted blocks, ordered by least member.
    std::vector<std::vector<std::size_t>> blocks() const {
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t>              pos(size(), npos);
      for (std::size_t x = 0; x < size(); ++x) {
        if (_block[x] == x) {
          pos[x] = out.size();
          out.emplace_back();
        }
        out[pos[_block[x]]].push_back(x);
      }
      return out;
    }

    std::vector<std::size_t> block_of(std::size_t x) const {
      std::vector<std::size_t> out;
      for (std::size_t y = 0; y < size(); ++y) {
        if (_block[y] == _block[x]) {
          out.push_back(y);
        }
      }
      return out;
    }

    // Index of the block of x when blocks are numbered by least member.
    std::size_t block_index(std::size_t x) const {
      std::size_t r = 0;
      for (std::size_t y = 0; y < _block[x]; ++y) {
        r += (_block[y] == y);
      }
      return r;
    }

    // True when every block of *this lies inside a block of that.
    bool refines(Partition const& that) const {
      for (std::size_t x = 0; x < size(); ++x) {
        if (!that.related(x, _block[x])) {
          return false;
        }
      }
      return true;
    }

    Partition join(Partition const& that) const {
      UnionFind uf(size());
      for (std::size_t x = 0; x < size(); ++x) {
        uf.unite(x, _block[x]);
        uf.unite(x, that._block[x]);
      }
      return from_union_find(uf);
    }

    // e.g. [[0,1],[2]]
    std::string to_string() const {
      std::string s = "[";
      bool        first_block = true;
      for (auto const& b : blocks()) {
        s += first_block ? "[" : ",[";
        first_block = false;
        for (std::size_t i = 0; i < b.size(); ++i) {
          s += (i ? "," : "") + std::to_string(b[i]);
        }
        s += "]";
      }
      return s + "]";
    }

    friend bool operator==(Partition const&, Partition const&) = default;
    friend auto operator<=>(Partition const&, Partition const&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

   private:
    std::vector<std::size_t> _block;
  };

}  // namespace agraph

#endif  // AGRAPH_PARTITION_HPP_
