#ifndef COLLATZ_TREE_HPP
#define COLLATZ_TREE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "collatz/nat.hpp"

// The tree of positive odd numbers rooted at 1. Children of an inner node
// come from the closed forms
//
//   f_plus(k, n)  = k * 2^(2n+1) + (2^2n - 1)/3        children of 6k+1, n >= 1
//   f_minus(k, n) = k * 2^(2n+2) - (2^(2n+1) + 1)/3    children of 6k-1, n >= 0
//
// and every odd x recovers its unique (branch, k, n) from the position of
// the first adjacent pair of identical bits in its binary expansion.
namespace collatz::tree {

enum class Branch { Plus, Minus };

// Partition of the odd numbers: multiples of 3 are leaves, the rest are
// inner nodes of the form 6k+1 or 6k-1.
struct NodeClass {
    enum class Kind { Leaf, InnerPlus, InnerMinus };
    Kind kind;
    Nat k;  // meaningful for inner nodes only
};

// x = q * 2^b + r with the branch and generator arguments read off the
// parity of b. Reconstruction f_branch(k, n) == x always holds.
struct Decomposition {
    Branch branch;
    Nat k;
    uint64_t n;
    uint64_t b;  // bits up to and including the first adjacent equal pair
    Nat q;       // floor(x / 2^b)
    Nat r;       // x mod 2^b
};

struct TreeEdge {
    Nat parent_value;
    Nat child_value;
    uint64_t n;  // sibling index: position among the parent's children
    uint64_t p;  // valuation of the child -> parent step
};

inline constexpr uint64_t kUnboundedDepth = UINT64_MAX;

// Rejects n = 0.
Nat f_plus(const Nat& k, uint64_t n);

// Rejects k = 0.
Nat f_minus(const Nat& k, uint64_t n);

NodeClass classify(const Nat& x);

// Smallest i+1 such that bits i and i-1 of x agree, scanning the binary
// expansion with implicit zeros above the top bit. Always >= 2 and found
// within bit_length(x) + 2 positions.
uint64_t boundary_bits(const Nat& x);

// The unique remainder mod 2^b shared by every odd x with boundary b.
Nat remainder_for(uint64_t b);

Decomposition decompose(const Nat& x);

// The unique incoming edge of x, computed from decompose(x) alone. Agrees
// with core::odd_step(x) in both value and valuation.
TreeEdge parent(const Nat& x);

// Children of x with values <= value_bound, in ascending sibling order.
// Empty for leaves. The self-child of the root (1 is its own f_plus(0,1)
// preimage) is omitted so tree expansion stays acyclic.
std::vector<TreeEdge> children(const Nat& x, const Nat& value_bound);

// Breadth-first expansion from the root 1. Every reachable node value is
// odd, at most value_bound, and appears exactly once.
std::vector<TreeEdge> generate_tree(const Nat& value_bound, uint64_t depth_bound = kUnboundedDepth);

enum class ExportFormat { Dot, Json, Csv };

// Deterministic serialization: DOT shapes nodes by class (oval leaf,
// triangle 6k+1, rectangle 6k-1) and labels edges with p; JSON emits
// {nodes, edges}; CSV emits "parent,child,n,p" rows sorted by child.
std::string export_tree(const std::vector<TreeEdge>& edges, ExportFormat format);

}  // namespace collatz::tree

#endif
