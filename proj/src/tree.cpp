#include "collatz/tree.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace collatz::tree {

namespace {

void require_odd(const Nat& x, const char* who) {
    if (x.is_zero() || x.is_even()) {
        throw std::invalid_argument(std::string(who) + ": input must be a positive odd number");
    }
}

// Values that fit a JSON unsigned stay numeric, larger ones become strings.
nlohmann::ordered_json json_value(const Nat& v) {
    if (v.fits_word()) return v.word();
    return v.to_string();
}

std::vector<TreeEdge> sorted_by_child(std::vector<TreeEdge> edges) {
    std::sort(edges.begin(), edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) { return a.child_value < b.child_value; });
    return edges;
}

std::set<Nat> collect_nodes(const std::vector<TreeEdge>& edges) {
    std::set<Nat> nodes;
    for (const auto& e : edges) {
        nodes.insert(e.parent_value);
        nodes.insert(e.child_value);
    }
    return nodes;
}

}  // namespace

Nat f_plus(const Nat& k, uint64_t n) {
    if (n < 1) throw std::invalid_argument("f_plus: n must be >= 1");
    Nat odd_part = ((Nat(1) << (2 * n)) - Nat(1)).div_exact(3);
    return (k << (2 * n + 1)) + odd_part;
}

Nat f_minus(const Nat& k, uint64_t n) {
    if (k.is_zero()) throw std::invalid_argument("f_minus: k must be >= 1");
    Nat odd_part = ((Nat(1) << (2 * n + 1)) + Nat(1)).div_exact(3);
    return (k << (2 * n + 2)) - odd_part;
}

NodeClass classify(const Nat& x) {
    require_odd(x, "classify");
    switch (x.mod_small(6)) {
        case 3:
            return NodeClass{NodeClass::Kind::Leaf, Nat(0)};
        case 1:
            return NodeClass{NodeClass::Kind::InnerPlus, (x - Nat(1)).div_exact(6)};
        default:  // 5
            return NodeClass{NodeClass::Kind::InnerMinus, (x + Nat(1)).div_exact(6)};
    }
}

uint64_t boundary_bits(const Nat& x) {
    require_odd(x, "boundary_bits");
    if (x.fits_word()) {
        // Bit j of x ^ (x >> 1) is 0 exactly when bits j and j+1 agree, so
        // the first adjacent equal pair sits just above the low run of ones.
        uint64_t z = x.word() ^ (x.word() >> 1);
        return static_cast<uint64_t>(std::countr_one(z)) + 2;
    }
    uint64_t len = x.bit_length();
    bool prev = true;  // bit 0 of an odd number
    for (uint64_t i = 1; i <= len + 1; ++i) {
        bool cur = x.bit(i);
        if (cur == prev) return i + 1;
        prev = cur;
    }
    internal_check(false, "boundary_bits: no boundary within bit_length + 2");
    return 0;
}

Nat remainder_for(uint64_t b) {
    if (b < 2) throw std::invalid_argument("remainder_for: b must be >= 2");
    if (b % 2 == 0) return (Nat(1) << b) - ((Nat(1) << (b - 1)) + Nat(1)).div_exact(3);
    return ((Nat(1) << (b - 1)) - Nat(1)).div_exact(3);
}

Decomposition decompose(const Nat& x) {
    uint64_t b = boundary_bits(x);
    Nat q = x >> b;
    Nat r = x.low_bits(b);
    if (b % 2 == 0) return Decomposition{Branch::Minus, q + Nat(1), (b - 2) / 2, b, std::move(q), std::move(r)};
    return Decomposition{Branch::Plus, q, (b - 1) / 2, b, std::move(q), std::move(r)};
}

TreeEdge parent(const Nat& x) {
    Decomposition d = decompose(x);
    if (d.branch == Branch::Plus) return TreeEdge{d.k * 6 + Nat(1), x, d.n, 2 * d.n};
    return TreeEdge{d.k * 6 - Nat(1), x, d.n, 2 * d.n + 1};
}

std::vector<TreeEdge> children(const Nat& x, const Nat& value_bound) {
    require_odd(x, "children");
    if (value_bound.is_zero()) throw std::invalid_argument("children: value_bound must be >= 1");

    std::vector<TreeEdge> edges;
    NodeClass c = classify(x);
    if (c.kind == NodeClass::Kind::Leaf) return edges;

    if (c.kind == NodeClass::Kind::InnerPlus) {
        for (uint64_t n = 1;; ++n) {
            Nat v = f_plus(c.k, n);
            if (value_bound < v) break;
            if (c.k.is_zero() && n == 1) continue;  // the root's self-child
            edges.push_back(TreeEdge{x, std::move(v), n, 2 * n});
        }
    } else {
        for (uint64_t n = 0;; ++n) {
            Nat v = f_minus(c.k, n);
            if (value_bound < v) break;
            edges.push_back(TreeEdge{x, std::move(v), n, 2 * n + 1});
        }
    }
    return edges;
}

std::vector<TreeEdge> generate_tree(const Nat& value_bound, uint64_t depth_bound) {
    if (value_bound.is_zero()) throw std::invalid_argument("generate_tree: value_bound must be >= 1");

    std::vector<TreeEdge> edges;
    std::deque<std::pair<Nat, uint64_t>> frontier;
    frontier.emplace_back(Nat(1), 0);
    while (!frontier.empty()) {
        auto [value, depth] = std::move(frontier.front());
        frontier.pop_front();
        if (depth >= depth_bound) continue;
        for (auto& e : children(value, value_bound)) {
            frontier.emplace_back(e.child_value, depth + 1);
            edges.push_back(std::move(e));
        }
    }
    return edges;
}

std::string export_tree(const std::vector<TreeEdge>& edges, ExportFormat format) {
    auto shape_of = [](const Nat& v) {
        switch (classify(v).kind) {
            case NodeClass::Kind::Leaf:
                return "oval";
            case NodeClass::Kind::InnerPlus:
                return "triangle";
            default:
                return "rectangle";
        }
    };
    auto class_of = [](const NodeClass& c) {
        switch (c.kind) {
            case NodeClass::Kind::Leaf:
                return "leaf";
            case NodeClass::Kind::InnerPlus:
                return "inner_plus";
            default:
                return "inner_minus";
        }
    };

    switch (format) {
        case ExportFormat::Dot: {
            std::string out = "digraph oddtree {\n";
            for (const Nat& v : collect_nodes(edges)) {
                out += "  " + v.to_string() + " [shape=" + shape_of(v) + "];\n";
            }
            for (const auto& e : sorted_by_child(edges)) {
                out += "  " + e.parent_value.to_string() + " -> " + e.child_value.to_string() +
                       " [label=\"" + std::to_string(e.p) + "\"];\n";
            }
            out += "}\n";
            return out;
        }
        case ExportFormat::Json: {
            nlohmann::ordered_json j;
            j["nodes"] = nlohmann::ordered_json::array();
            for (const Nat& v : collect_nodes(edges)) {
                NodeClass c = classify(v);
                nlohmann::ordered_json node;
                node["value"] = json_value(v);
                node["class"] = class_of(c);
                if (c.kind == NodeClass::Kind::Leaf) {
                    node["k"] = nullptr;
                } else {
                    node["k"] = json_value(c.k);
                }
                j["nodes"].push_back(std::move(node));
            }
            j["edges"] = nlohmann::ordered_json::array();
            for (const auto& e : sorted_by_child(edges)) {
                nlohmann::ordered_json edge;
                edge["parent"] = json_value(e.parent_value);
                edge["child"] = json_value(e.child_value);
                edge["n"] = e.n;
                edge["p"] = e.p;
                j["edges"].push_back(std::move(edge));
            }
            return j.dump() + "\n";
        }
        case ExportFormat::Csv: {
            std::string out = "parent,child,n,p\n";
            for (const auto& e : sorted_by_child(edges)) {
                out += e.parent_value.to_string() + "," + e.child_value.to_string() + "," +
                       std::to_string(e.n) + "," + std::to_string(e.p) + "\n";
            }
            return out;
        }
    }
    internal_check(false, "export_tree: unknown format");
    return {};
}

}  // namespace collatz::tree
