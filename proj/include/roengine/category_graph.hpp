#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "roengine/error.hpp"

namespace roengine {

/// Category DAG (edges parent to child) with a single root, plus the
/// categories assigned to each article.
class CategoryGraph {
public:
    void add_node(const std::string& id, std::string label = {}) {
        if (id.empty()) fail(ErrorCode::InvalidArgument, "empty category id");
        auto& l = labels_[id];
        if (!label.empty() || l.empty()) l = label.empty() ? id : std::move(label);
        parents_[id];
        children_[id];
        invalidate();
    }

    void add_edge(const std::string& parent, const std::string& child) {
        if (parent == child) fail(ErrorCode::InvalidArgument, "self edge on " + parent);
        add_node(parent);
        add_node(child);
        if (reaches(child, parent)) fail(ErrorCode::InvalidArgument, "edge " + parent + " -> " + child + " closes a cycle");
        children_[parent].insert(child);
        parents_[child].insert(parent);
        invalidate();
    }

    void assign(const std::string& article, const std::string& category) {
        require(category);
        assignments_[article].insert(category);
    }

    bool contains(const std::string& c) const { return labels_.contains(c); }
    std::size_t size() const { return labels_.size(); }
    const std::string& label(const std::string& c) const { return labels_.at(require(c)); }

    std::vector<std::string> nodes() const {
        std::vector<std::string> out;
        for (const auto& [id, l] : labels_) out.push_back(id);
        return out;
    }

    const std::set<std::string>& parents(const std::string& c) const { return parents_.at(require(c)); }
    const std::set<std::string>& children(const std::string& c) const { return children_.at(require(c)); }
    const std::map<std::string, std::set<std::string>>& assignments() const { return assignments_; }

    const std::set<std::string>& categories_of(const std::string& article) const {
        static const std::set<std::string> none;
        const auto it = assignments_.find(article);
        return it == assignments_.end() ? none : it->second;
    }

    /// Articles assigned to `c` (directly).
    std::set<std::string> articles_in(const std::string& c) const {
        require(c);
        std::set<std::string> out;
        for (const auto& [a, cats] : assignments_) {
            if (cats.contains(c)) out.insert(a);
        }
        return out;
    }

    /// The unique parentless node.
    const std::string& root() const {
        compute();
        if (!root_) fail(ErrorCode::InvalidArgument, "category graph has no unique root");
        return *root_;
    }

    /// Shortest edge distance from the root; max() when unreachable.
    std::size_t depth(const std::string& c) const {
        require(c);
        compute();
        const auto it = depth_.find(c);
        return it == depth_.end() ? std::numeric_limits<std::size_t>::max() : it->second;
    }

    /// `c` and every category above it.
    std::set<std::string> ancestors(const std::string& c) const { return closure(c, parents_); }

    /// `c` and every category below it.
    std::set<std::string> subtree(const std::string& c) const { return closure(c, children_); }

    /// Parents, siblings (other children of any parent) and children of `c`.
    std::set<std::string> neighbors(const std::string& c) const {
        std::set<std::string> out = parents(c);
        for (const auto& p : parents_.at(c)) out.insert(children_.at(p).begin(), children_.at(p).end());
        out.insert(children_.at(c).begin(), children_.at(c).end());
        out.erase(c);
        return out;
    }

    /// Shortest path ignoring edge direction, endpoints included; among
    /// equally short paths the lexicographically smallest id sequence.
    std::vector<std::string> path(const std::string& from, const std::string& to) const {
        require(from);
        require(to);
        std::map<std::string, std::size_t> dist{{to, 0}};
        std::deque<std::string> queue{to};
        while (!queue.empty()) {
            const auto cur = queue.front();
            queue.pop_front();
            for (const auto& next : undirected(cur)) {
                if (dist.emplace(next, dist[cur] + 1).second) queue.push_back(next);
            }
        }
        if (!dist.contains(from)) fail(ErrorCode::NoPath, "no path between " + from + " and " + to);
        std::vector<std::string> out{from};
        while (out.back() != to) {
            const auto d = dist.at(out.back());
            for (const auto& next : undirected(out.back())) {
                const auto it = dist.find(next);
                if (it != dist.end() && it->second + 1 == d) {
                    out.push_back(next);
                    break;
                }
            }
        }
        return out;
    }

    /// Deepest common ancestor (a node counts as its own ancestor); ties go to
    /// the smaller subtree, then the smaller id.
    std::string lcs(const std::string& a, const std::string& b) const {
        const auto up_a = ancestors(a);
        const auto up_b = ancestors(b);
        std::optional<std::string> best;
        std::size_t best_depth = 0;
        std::size_t best_size = 0;
        for (const auto& c : up_a) {
            if (!up_b.contains(c)) continue;
            const auto d = depth(c);
            if (d == std::numeric_limits<std::size_t>::max()) continue;
            const auto s = subtree(c).size();
            if (!best || d > best_depth || (d == best_depth && s < best_size)) {
                best = c;
                best_depth = d;
                best_size = s;
            }
        }
        if (!best) fail(ErrorCode::NoCommonAncestor, a + " and " + b + " have no common ancestor");
        return *best;
    }

private:
    const std::string& require(const std::string& c) const {
        if (!contains(c)) fail(ErrorCode::UnknownCategory, "unknown category '" + c + "'");
        return c;
    }

    std::set<std::string> undirected(const std::string& c) const {
        std::set<std::string> out = parents_.at(c);
        out.insert(children_.at(c).begin(), children_.at(c).end());
        return out;
    }

    std::set<std::string> closure(const std::string& c, const std::map<std::string, std::set<std::string>>& edges) const {
        require(c);
        std::set<std::string> seen{c};
        std::vector<std::string> stack{c};
        while (!stack.empty()) {
            const auto cur = stack.back();
            stack.pop_back();
            for (const auto& next : edges.at(cur)) {
                if (seen.insert(next).second) stack.push_back(next);
            }
        }
        return seen;
    }

    bool reaches(const std::string& from, const std::string& to) const { return closure(from, children_).contains(to); }

    void invalidate() { computed_ = false; }

    void compute() const {
        if (computed_) return;
        root_.reset();
        depth_.clear();
        std::vector<std::string> roots;
        for (const auto& [id, ps] : parents_) {
            if (ps.empty()) roots.push_back(id);
        }
        if (roots.size() == 1) {
            root_ = roots.front();
            depth_[*root_] = 0;
            std::deque<std::string> queue{*root_};
            while (!queue.empty()) {
                const auto cur = queue.front();
                queue.pop_front();
                for (const auto& next : children_.at(cur)) {
                    if (depth_.emplace(next, depth_[cur] + 1).second) queue.push_back(next);
                }
            }
        }
        computed_ = true;
    }

    std::map<std::string, std::string> labels_;
    std::map<std::string, std::set<std::string>> parents_;
    std::map<std::string, std::set<std::string>> children_;
    std::map<std::string, std::set<std::string>> assignments_;
    mutable bool computed_ = false;
    mutable std::optional<std::string> root_;
    mutable std::map<std::string, std::size_t> depth_;
};

}  // namespace roengine
