#pragma once

#include "spltest/feature_model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace spltest {

// A basic feature tree: a rooted tree of features with mandatory/optional
// child edges, or/xor groups, and requires/excludes cross-tree constraints.
// Node ids double as 0-based feature indices (creation order).
class FeatureTree {
public:
    enum class EdgeKind { mandatory, optional };
    enum class GroupKind { or_group, xor_group };

    struct Group {
        GroupKind kind;
        std::vector<int> members; // node ids
    };

    struct Node {
        std::string name;
        int parent = -1;
        EdgeKind edge = EdgeKind::optional; // meaningless for the root and group members
        std::vector<int> children;          // direct mandatory/optional children
        std::vector<Group> groups;
    };

    explicit FeatureTree(std::string root_name);

    int add_child(int parent, std::string name, EdgeKind kind);
    // Returns the index of the new group within the parent node.
    int add_group(int parent, GroupKind kind);
    int add_group_member(int parent, int group_index, std::string name);

    void add_requires(const std::string& a, const std::string& b);
    void add_excludes(const std::string& a, const std::string& b);

    int feature_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& requires_edges() const { return requires_; }
    const std::vector<std::pair<int, int>>& excludes_edges() const { return excludes_; }

    // Node id for a feature name; throws std::invalid_argument if unknown.
    int node_of(const std::string& name) const;

private:
    int add_node(std::string name, int parent, EdgeKind kind);

    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> requires_;
    std::vector<std::pair<int, int>> excludes_;
};

// Parses the indented tree format:
//
//   car
//     m engine
//     o radio
//     g[1,1]
//       gas
//       diesel
//   requires: radio engine
//   excludes: gas diesel
//
// One feature per line. `m`/`o` prefix a mandatory/optional child; a
// `g[1,1]` (xor) or `g[1,*]` (or) line opens a group whose members are the
// deeper-indented bare names below it; members may carry subtrees of their
// own. `requires:`/`excludes:` trailer lines name feature pairs. Feature
// names are single whitespace-free tokens. Throws ParseError.
FeatureTree parse_tree(const std::string& text);

// Compiles the tree to CNF: the root is forced selected; every child implies
// its parent; mandatory children are implied by the parent; an or-group
// requires one member when the parent is selected; an xor-group additionally
// excludes members pairwise; requires/excludes become 2-literal clauses.
// Solutions of the result correspond one-to-one with valid configurations
// of the tree.
FeatureModel compile_tree(const FeatureTree& tree);

} // namespace spltest
