#include "momenta/maps.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "momenta/scan.hpp"

namespace momenta {

namespace {

// Half-edges of the disjoint union of polygons; sigma steps to the next edge of the same polygon.
struct Surface {
    std::vector<int> color, sigma, polygon;
    int polygons = 0;

    void add(const Word& w) {
        const int base = static_cast<int>(color.size());
        const int n = static_cast<int>(w.size());
        for (int i = 0; i < n; ++i) {
            color.push_back(w[i]);
            sigma.push_back(base + (i + 1) % n);
            polygon.push_back(polygons);
        }
        ++polygons;
    }
    int size() const { return static_cast<int>(color.size()); }
};

struct Enumerator {
    const Surface& s;
    std::optional<int> genus_filter;
    std::vector<int> alpha;
    std::array<long long, kMaxGluingEdges / 2 + 1> counts{};

    void leaf() {
        const int n = s.size();
        // Connectivity over polygons; sizes are bounded by the edge cap.
        if (s.polygons > 1) {
            std::array<int, kMaxGluingEdges> parent;
            std::iota(parent.begin(), parent.begin() + s.polygons, 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            int components = s.polygons;
            for (int i = 0; i < n; ++i) {
                int a = find(s.polygon[i]), b = find(s.polygon[alpha[i]]);
                if (a != b) {
                    parent[a] = b;
                    --components;
                }
            }
            if (components != 1) return;
        }
        // Faces are the cycles of sigma after alpha.
        std::array<char, kMaxGluingEdges> seen{};
        int faces = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            ++faces;
            for (int x = i; !seen[x]; x = s.sigma[alpha[x]]) seen[x] = 1;
        }
        const int chi = s.polygons - n / 2 + faces;
        const int genus = (2 - chi) / 2;
        if (genus_filter && genus != *genus_filter) return;
        ++counts[genus];
    }

    // A single polygon glues to a sphere exactly when no two chords cross.
    bool planar_disk = false;
    bool crosses(int i, int j) const {
        for (int k = i + 1; k < j; ++k)
            if (alpha[k] >= 0 && (alpha[k] < i || alpha[k] > j)) return true;
        return false;
    }

    void run() {
        int i = 0;
        while (i < s.size() && alpha[i] >= 0) ++i;
        if (i == s.size()) {
            leaf();
            return;
        }
        for (int j = i + 1; j < s.size(); ++j) {
            if (alpha[j] >= 0 || s.color[j] != s.color[i]) continue;
            if (planar_disk && crosses(i, j)) continue;
            alpha[i] = j;
            alpha[j] = i;
            run();
            alpha[i] = alpha[j] = -1;
        }
    }
};

bool colors_balanced(const Surface& s) {
    std::map<int, int> per;
    for (int c : s.color) ++per[c];
    for (const auto& [c, k] : per)
        if (k % 2) return false;
    return true;
}

// Enumeration split over the partner of half-edge 0, merged in a fixed order.
std::map<int, long long> enumerate(const Surface& s, std::optional<int> genus, int threads) {
    std::map<int, long long> total;
    if (s.size() == 0 || !colors_balanced(s)) return total;
    std::vector<int> partners;
    for (int j = 1; j < s.size(); ++j)
        if (s.color[j] == s.color[0]) partners.push_back(j);
    std::vector<std::map<int, long long>> parts(partners.size());
    auto task = [&](std::size_t k) {
        Enumerator e{s, genus, std::vector<int>(s.size(), -1), {}};
        e.planar_disk = s.polygons == 1 && genus == 0;
        e.alpha[0] = partners[k];
        e.alpha[partners[k]] = 0;
        e.run();
        for (int g = 0; g < static_cast<int>(e.counts.size()); ++g)
            if (e.counts[g]) parts[k][g] = e.counts[g];
    };
    const int workers = std::min<int>(thread_count(threads), static_cast<int>(partners.size()));
    if (workers <= 1 || s.size() < 12) {
        for (std::size_t k = 0; k < partners.size(); ++k) task(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next.fetch_add(1)) < partners.size();) task(k);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& part : parts)
        for (const auto& [g, c] : part) total[g] += c;
    return total;
}

void check_colors(const Word& w, int m) {
    if (w.max_letter() >= m) throw std::invalid_argument("maps: word '" + w.to_string() + "' uses a color >= m");
}

}  // namespace

GenusCounts count_pairings(const Word& w) {
    if (w.size() % 2) throw std::invalid_argument("maps: odd length polygon '" + w.to_string() + "'");
    if (static_cast<int>(w.size()) > kMaxGluingEdges) throw ResourceCapExceeded("maps: more than 16 edges");
    Surface s;
    s.add(w);
    return enumerate(s, std::nullopt, 1);
}

GluingProblem GluingProblem::from_model(const ModelSpec& model, const Word& rooted) {
    GluingProblem p;
    p.m = model.m;
    p.rooted = rooted;
    p.polygons = model.terms;
    return p;
}

BigRational GluingCount::coefficient(int j, int genus) const {
    auto it = weighted.find(j);
    if (it == weighted.end()) return BigRational(0);
    auto jt = it->second.find(genus);
    return jt == it->second.end() ? BigRational(0) : jt->second;
}

long long GluingCount::total(int j) const {
    long long t = 0;
    if (auto it = labeled.find(j); it != labeled.end())
        for (const auto& [g, c] : it->second) t += c;
    return t;
}

GluingCount count_gluings(const GluingProblem& p, int max_polygons, int threads) {
    if (max_polygons < 0) throw std::invalid_argument("maps: negative polygon count");
    check_colors(p.rooted, p.m);
    for (const auto& t : p.polygons) check_colors(t.word.word(), p.m);
    GluingCount out;
    const int types = static_cast<int>(p.polygons.size());
    for (int j = 0; j <= max_polygons; ++j) {
        auto& labeled = out.labeled[j];
        auto& weighted = out.weighted[j];
        if (j > 0 && types == 0) continue;
        // Multisets of polygon types as nondecreasing index tuples.
        std::vector<int> pick(j, 0);
        while (true) {
            int edges = static_cast<int>(p.rooted.size());
            for (int k : pick) edges += static_cast<int>(p.polygons[k].word.size());
            if (edges > kMaxGluingEdges)
                throw ResourceCapExceeded("maps: " + std::to_string(edges) + " edges at j = " + std::to_string(j) +
                                          " exceeds the cap of 16");
            Surface s;
            s.add(p.rooted);
            for (int k : pick) s.add(p.polygons[k].word.word());
            auto counts = enumerate(s, p.genus, threads);
            // Ordered tuples per multiset: j! / prod(mult!); weight prod(-w) / j! each.
            long long mult_fact = 1;
            for (int a = 0; a < j;) {
                int b = a;
                while (b < j && pick[b] == pick[a]) ++b;
                for (int k = 1; k <= b - a; ++k) mult_fact *= k;
                a = b;
            }
            long long orderings = 1;
            for (int k = 1; k <= j; ++k) orderings *= k;
            orderings /= mult_fact;
            BigRational weight = BigRational(1) / BigRational(mult_fact);
            for (int k : pick) weight = weight * -p.polygons[k].weight();
            for (const auto& [g, c] : counts) {
                labeled[g] += c * orderings;
                weighted[g] += weight * BigRational(c);
            }
            // Next nondecreasing tuple.
            int pos = j - 1;
            while (pos >= 0 && pick[pos] == types - 1) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int k = pos + 1; k < j; ++k) pick[k] = pick[pos];
        }
    }
    return out;
}

int theorem_bound(int l, int d) {
    if (l < 1 || d < 3) throw std::invalid_argument("theorem_bound: needs l >= 1 and d >= 3");
    return (l + d - 1) / d;
}

std::string gluings_to_json(const GluingProblem& p, const GluingCount& c) {
    nlohmann::ordered_json j;
    j["rooted"] = p.rooted.to_string();
    auto& polys = j["polygons"] = nlohmann::ordered_json::array();
    for (const auto& t : p.polygons) polys.push_back({{"word", t.word.to_string()}, {"weight", t.weight().to_string()}});
    if (p.genus) j["genus_filter"] = *p.genus;
    auto& orders = j["orders"] = nlohmann::ordered_json::array();
    for (const auto& [order, by_genus] : c.labeled) {
        nlohmann::ordered_json o;
        o["j"] = order;
        auto& lab = o["labeled"] = nlohmann::ordered_json::object();
        for (const auto& [g, n] : by_genus) lab[std::to_string(g)] = n;
        auto& w = o["weighted"] = nlohmann::ordered_json::object();
        for (const auto& [g, v] : c.weighted.at(order)) w[std::to_string(g)] = v.to_string();
        orders.push_back(std::move(o));
    }
    return j.dump(2);
}

}  // namespace momenta
