#include "spltest/feature_tree.hpp"

#include "spltest/errors.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace spltest {

FeatureTree::FeatureTree(std::string root_name) {
    add_node(std::move(root_name), -1, EdgeKind::optional);
}

int FeatureTree::add_node(std::string name, int parent, EdgeKind kind) {
    if (name.empty())
        throw std::invalid_argument("feature name must not be empty");
    for (const Node& node : nodes_) {
        if (node.name == name)
            throw std::invalid_argument("duplicate feature name: " + name);
    }
    Node node;
    node.name = std::move(name);
    node.parent = parent;
    node.edge = kind;
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

int FeatureTree::add_child(int parent, std::string name, EdgeKind kind) {
    const int id = add_node(std::move(name), parent, kind);
    nodes_[static_cast<size_t>(parent)].children.push_back(id);
    return id;
}

int FeatureTree::add_group(int parent, GroupKind kind) {
    nodes_[static_cast<size_t>(parent)].groups.push_back({kind, {}});
    return static_cast<int>(nodes_[static_cast<size_t>(parent)].groups.size()) - 1;
}

int FeatureTree::add_group_member(int parent, int group_index, std::string name) {
    const int id = add_node(std::move(name), parent, EdgeKind::optional);
    nodes_[static_cast<size_t>(parent)].groups[static_cast<size_t>(group_index)]
        .members.push_back(id);
    return id;
}

int FeatureTree::node_of(const std::string& name) const {
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].name == name)
            return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown feature: " + name);
}

void FeatureTree::add_requires(const std::string& a, const std::string& b) {
    requires_.emplace_back(node_of(a), node_of(b));
}

void FeatureTree::add_excludes(const std::string& a, const std::string& b) {
    excludes_.emplace_back(node_of(a), node_of(b));
}

namespace {

struct StackEntry {
    int indent;
    bool is_group;
    int node;  // owning node for groups
    int group; // group index within the node, -1 otherwise
};

int count_indent(const std::string& line, int line_no, size_t& start) {
    size_t i = 0;
    while (i < line.size() && line[i] == ' ')
        ++i;
    if (i < line.size() && line[i] == '\t')
        throw ParseError(line_no, "tabs are not allowed; indent with spaces");
    start = i;
    return static_cast<int>(i);
}

std::pair<std::string, std::string> split_two_names(const std::string& rest,
                                                    int line_no,
                                                    const char* what) {
    std::istringstream is(rest);
    std::string a, b, extra;
    if (!(is >> a >> b) || (is >> extra))
        throw ParseError(line_no,
                         std::string(what) + " expects exactly two feature names");
    return {a, b};
}

} // namespace

FeatureTree parse_tree(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;

    std::unique_ptr<FeatureTree> tree;
    std::vector<StackEntry> stack;
    // constraints are resolved after all features are known
    std::vector<std::tuple<bool, std::string, std::string, int>> constraints;

    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        size_t start = 0;
        const int indent = count_indent(line, line_no, start);
        std::string rest = line.substr(start);
        if (rest.empty())
            continue;

        if (rest.rfind("requires:", 0) == 0) {
            auto [a, b] = split_two_names(rest.substr(9), line_no, "requires:");
            constraints.emplace_back(true, a, b, line_no);
            continue;
        }
        if (rest.rfind("excludes:", 0) == 0) {
            auto [a, b] = split_two_names(rest.substr(9), line_no, "excludes:");
            constraints.emplace_back(false, a, b, line_no);
            continue;
        }

        std::istringstream toks(rest);
        std::string head;
        toks >> head;

        try {
            if (head == "m" || head == "o") {
                std::string name, extra;
                if (!(toks >> name) || (toks >> extra))
                    throw ParseError(line_no, "expected a single feature name after `" +
                                                  head + "`");
                while (!stack.empty() && stack.back().indent >= indent)
                    stack.pop_back();
                if (stack.empty() || stack.back().is_group)
                    throw ParseError(line_no,
                                     stack.empty()
                                         ? "feature outside the tree"
                                         : "group members must be bare names");
                const auto kind = head == "m" ? FeatureTree::EdgeKind::mandatory
                                              : FeatureTree::EdgeKind::optional;
                const int id = tree->add_child(stack.back().node, name, kind);
                stack.push_back({indent, false, id, -1});
            } else if (head == "g[1,1]" || head == "g[1,*]") {
                std::string extra;
                if (toks >> extra)
                    throw ParseError(line_no, "group lines take no name");
                while (!stack.empty() && stack.back().indent >= indent)
                    stack.pop_back();
                if (stack.empty() || stack.back().is_group)
                    throw ParseError(line_no, "group must hang off a feature");
                const auto kind = head == "g[1,1]" ? FeatureTree::GroupKind::xor_group
                                                   : FeatureTree::GroupKind::or_group;
                const int g = tree->add_group(stack.back().node, kind);
                stack.push_back({indent, true, stack.back().node, g});
            } else {
                // bare name: the root, or a group member
                std::string extra;
                if (toks >> extra)
                    throw ParseError(line_no, "expected a single feature name");
                if (!tree) {
                    tree = std::make_unique<FeatureTree>(head);
                    stack.push_back({indent, false, 0, -1});
                    continue;
                }
                while (!stack.empty() && stack.back().indent >= indent)
                    stack.pop_back();
                if (stack.empty())
                    throw ParseError(line_no, "multiple roots");
                if (!stack.back().is_group)
                    throw ParseError(line_no,
                                     "expected an `m`, `o` or `g[...]` prefix under a feature");
                const int id = tree->add_group_member(stack.back().node,
                                                      stack.back().group, head);
                stack.push_back({indent, false, id, -1});
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }

    if (!tree)
        throw ParseError(line_no, "empty tree");
    for (const auto& node : tree->nodes()) {
        for (const auto& group : node.groups) {
            if (group.members.empty())
                throw ParseError(0, "group under `" + node.name + "` has no members");
        }
    }
    for (const auto& [is_requires, a, b, at] : constraints) {
        try {
            if (is_requires)
                tree->add_requires(a, b);
            else
                tree->add_excludes(a, b);
        } catch (const std::invalid_argument& e) {
            throw ParseError(at, e.what());
        }
    }
    return std::move(*tree);
}

FeatureModel compile_tree(const FeatureTree& tree) {
    std::vector<std::string> features;
    features.reserve(tree.nodes().size());
    for (const auto& node : tree.nodes())
        features.push_back(node.name);

    std::vector<Clause> clauses;
    clauses.push_back({1}); // the root is always selected

    const auto& nodes = tree.nodes();
    for (size_t i = 0; i < nodes.size(); ++i) {
        const int self = static_cast<int>(i) + 1;
        // child -> parent
        if (nodes[i].parent >= 0)
            clauses.push_back({-self, nodes[i].parent + 1});
        // parent -> mandatory child
        for (int child : nodes[i].children) {
            if (nodes[static_cast<size_t>(child)].edge == FeatureTree::EdgeKind::mandatory)
                clauses.push_back({-self, child + 1});
        }
        for (const auto& group : nodes[i].groups) {
            Clause at_least{-self};
            for (int member : group.members)
                at_least.push_back(member + 1);
            clauses.push_back(std::move(at_least));
            if (group.kind == FeatureTree::GroupKind::xor_group) {
                for (size_t a = 0; a < group.members.size(); ++a)
                    for (size_t b = a + 1; b < group.members.size(); ++b)
                        clauses.push_back({-(group.members[a] + 1),
                                           -(group.members[b] + 1)});
            }
        }
    }
    for (const auto& [a, b] : tree.requires_edges())
        clauses.push_back({-(a + 1), b + 1});
    for (const auto& [a, b] : tree.excludes_edges())
        clauses.push_back({-(a + 1), -(b + 1)});

    return FeatureModel(std::move(features), std::move(clauses));
}

} // namespace spltest
