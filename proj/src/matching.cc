// Copyright 2026 The leaksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "leaksim/matching.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace leaksim {

namespace {

// Port of the classic primal-dual blossom matcher (Galil's formulation of
// Edmonds' algorithm). Vertices are 0..nv-1, blossoms nv..2nv-1. An edge k has
// endpoints 2k and 2k+1; endpoint p belongs to vertex endpoint_[p], and p ^ 1
// is the opposite end.
//
// Labels: 0 free, 1 S (outer), 2 T (inner); 5 marks blossoms while scanning.
class BlossomMatcher {
   public:
    BlossomMatcher(size_t nv, const std::vector<WeightedEdge> &edges, bool max_cardinality)
        : nv_(static_cast<int>(nv)), max_cardinality_(max_cardinality) {
        int ne = static_cast<int>(edges.size());
        edge_u_.resize(ne);
        edge_v_.resize(ne);
        weight_.resize(ne);
        int64_t max_weight = 0;
        for (int k = 0; k < ne; k++) {
            edge_u_[k] = static_cast<int>(edges[k].u);
            edge_v_[k] = static_cast<int>(edges[k].v);
            if (edge_u_[k] >= nv_ || edge_v_[k] >= nv_ || edge_u_[k] == edge_v_[k]) {
                throw std::invalid_argument("matching edge has an invalid endpoint");
            }
            // Doubled so every dual adjustment stays integral.
            weight_[k] = 2 * edges[k].weight;
            max_weight = std::max(max_weight, weight_[k]);
        }
        endpoint_.resize(2 * ne);
        for (int p = 0; p < 2 * ne; p++) {
            endpoint_[p] = p % 2 == 0 ? edge_u_[p / 2] : edge_v_[p / 2];
        }
        neighbend_.resize(nv_);
        for (int k = 0; k < ne; k++) {
            neighbend_[edge_u_[k]].push_back(2 * k + 1);
            neighbend_[edge_v_[k]].push_back(2 * k);
        }
        mate_.assign(nv_, -1);
        label_.assign(2 * nv_, 0);
        labelend_.assign(2 * nv_, -1);
        inblossom_.resize(nv_);
        for (int v = 0; v < nv_; v++) {
            inblossom_[v] = v;
        }
        blossomparent_.assign(2 * nv_, -1);
        blossomchilds_.resize(2 * nv_);
        blossomendps_.resize(2 * nv_);
        blossombase_.assign(2 * nv_, -1);
        for (int v = 0; v < nv_; v++) {
            blossombase_[v] = v;
        }
        bestedge_.assign(2 * nv_, -1);
        blossombestedges_.resize(2 * nv_);
        has_bestedges_.assign(2 * nv_, false);
        for (int b = 2 * nv_ - 1; b >= nv_; b--) {
            unusedblossoms_.push_back(b);
        }
        dualvar_.assign(2 * nv_, 0);
        for (int v = 0; v < nv_; v++) {
            dualvar_[v] = max_weight;
        }
        allowedge_.assign(ne, false);
    }

    std::vector<int32_t> solve() {
        for (int stage = 0; stage < nv_; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv_; b < 2 * nv_; b++) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (int v = 0; v < nv_; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = true;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }

                int deltatype = -1;
                int64_t delta = 0;
                int deltaedge = -1;
                int deltablossom = -1;
                if (!max_cardinality_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
                }
                for (int v = 0; v < nv_; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        int64_t d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * nv_; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        int64_t d = slack(bestedge_[b]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = nv_; b < 2 * nv_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    // No further improvement possible; optimum reached.
                    deltatype = 1;
                    delta = std::max<int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_));
                }

                for (int v = 0; v < nv_; v++) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = nv_; b < 2 * nv_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }

                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = edge_u_[deltaedge];
                    int j = edge_v_[deltaedge];
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(edge_u_[deltaedge]);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int b = nv_; b < 2 * nv_; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }

        std::vector<int32_t> out(nv_, -1);
        for (int v = 0; v < nv_; v++) {
            if (mate_[v] >= 0) {
                out[v] = endpoint_[mate_[v]];
            }
        }
        return out;
    }

   private:
    int64_t slack(int k) const {
        return dualvar_[edge_u_[k]] + dualvar_[edge_v_[k]] - 2 * weight_[k];
    }

    void leaves(int b, std::vector<int> &out) const {
        if (b < nv_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            leaves(t, out);
        }
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Walks up from v and w in alternation looking for a common ancestor.
    // Returns the base of the new blossom, or -1 for an augmenting path.
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edge_u_[k];
        int w = edge_v_[k];
        int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int> &path = blossomchilds_[b];
        std::vector<int> &endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) {
                queue_.push_back(leaf);
            }
            inblossom_[leaf] = b;
        }

        std::vector<int> bestedgeto(2 * nv_, -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[child]) {
                for (int leaf : leaves(child)) {
                    std::vector<int> list;
                    for (int p : neighbend_[leaf]) {
                        list.push_back(p / 2);
                    }
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(blossombestedges_[child]);
            }
            for (const auto &nblist : nblists) {
                for (int e : nblist) {
                    int i = edge_u_[e];
                    int j = edge_v_[e];
                    if (inblossom_[j] == b) {
                        std::swap(i, j);
                    }
                    int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
                        bestedgeto[bj] = e;
                    }
                }
            }
            blossombestedges_[child].clear();
            has_bestedges_[child] = false;
            bestedge_[child] = -1;
        }
        blossombestedges_[b].clear();
        for (int e : bestedgeto) {
            if (e != -1) {
                blossombestedges_[b].push_back(e);
            }
        }
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (int e : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) {
                bestedge_[b] = e;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        std::vector<int> children = blossomchilds_[b];
        for (int s : children) {
            blossomparent_[s] = -1;
            if (s < nv_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) {
                    inblossom_[leaf] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            // Relabel the children along the even-length path from the entry
            // child to the base.
            const std::vector<int> &childs = blossomchilds_[b];
            const std::vector<int> &endps = blossomendps_[b];
            int len = static_cast<int>(childs.size());
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep;
            int endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto at = [len](const std::vector<int> &xs, int idx) {
                return xs[((idx % len) + len) % len];
            };
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = true;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int bv = at(childs, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found >= 0) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= nv_) {
            augment_blossom(t, v);
        }
        std::vector<int> &childs = blossomchilds_[b];
        std::vector<int> &endps = blossomendps_[b];
        int len = static_cast<int>(childs.size());
        auto at = [len](const std::vector<int> &xs, int idx) {
            return xs[((idx % len) + len) % len];
        };
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep;
        int endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(childs, j);
            int p = at(endps, j - endptrick) ^ endptrick;
            if (t >= nv_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = at(childs, j);
            if (t >= nv_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int k) {
        int v = edge_u_[k];
        int w = edge_v_[k];
        for (auto [s, p] : {std::pair<int, int>{v, 2 * k + 1}, std::pair<int, int>{w, 2 * k}}) {
            while (true) {
                int bs = inblossom_[s];
                if (bs >= nv_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= nv_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int nv_;
    bool max_cardinality_;
    std::vector<int> edge_u_;
    std::vector<int> edge_v_;
    std::vector<int64_t> weight_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> blossombase_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

std::vector<int32_t> max_weight_matching(
    size_t num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality) {
    if (num_vertices == 0) {
        return {};
    }
    return BlossomMatcher(num_vertices, edges, max_cardinality).solve();
}

std::vector<int32_t> min_weight_perfect_matching(size_t n, const std::vector<int64_t> &weights) {
    if (n % 2 != 0) {
        throw std::invalid_argument("perfect matching needs an even vertex count, got " + std::to_string(n));
    }
    if (weights.size() != n * n) {
        throw std::invalid_argument("weight matrix size does not match vertex count");
    }
    if (n == 0) {
        return {};
    }
    if (n == 2) {
        return {1, 0};
    }
    int64_t max_weight = 0;
    for (int64_t w : weights) {
        if (w < 0) {
            throw std::invalid_argument("matching weights must be non-negative");
        }
        max_weight = std::max(max_weight, w);
    }
    // Maximizing sum(C - w) over perfect matchings minimizes sum(w); C > max w
    // keeps every transformed weight positive.
    std::vector<WeightedEdge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t j = i + 1; j < n; j++) {
            edges.push_back({i, j, max_weight + 1 - weights[i * n + j]});
        }
    }
    std::vector<int32_t> mate = max_weight_matching(n, edges, true);
    for (int32_t m : mate) {
        if (m < 0) {
            throw std::logic_error("blossom matcher returned an imperfect matching on a complete graph");
        }
    }
    return mate;
}

}  // namespace leaksim
