// Naive homogeneity count over all labelled digraphs on n vertices, without
// any prefilter. Prints the number of homogeneous labelled digraphs, the
// number of isomorphism classes, and one line per class with its least
// relabelled mask.
//
// build: g++ -O2 -std=c++17 digraph_oracle.cpp -o digraph_oracle
// usage: ./digraph_oracle N
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <vector>

static int n;
static std::vector<std::vector<int>> perms;

static inline int adj(uint64_t m, int i, int j) { return (m >> (i * n + j)) & 1; }

static uint64_t relabel(uint64_t m, const std::vector<int>& p) {
    uint64_t out = 0;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            if (adj(m, i, j)) out |= 1ULL << (p[i] * n + p[j]);
    return out;
}

static bool homogeneous(uint64_t m, const std::vector<const std::vector<int>*>& aut) {
    // every injective partial map dom -> img that preserves arrows must
    // be realised by an automorphism
    for (int k = 1; k <= n; k++) {
        std::vector<int> sel(n, 0);
        std::fill(sel.end() - k, sel.end(), 1);
        do {
            std::vector<int> dom;
            for (int i = 0; i < n; i++)
                if (sel[i]) dom.push_back(i);
            for (const auto& p : perms) {
                // img = first k entries of p, all orderings appear among perms
                std::vector<int> img(p.begin(), p.begin() + k);
                bool iso = true;
                for (int a = 0; a < k && iso; a++)
                    for (int b = 0; b < k && iso; b++)
                        if (adj(m, dom[a], dom[b]) != adj(m, img[a], img[b])) iso = false;
                if (!iso) continue;
                bool ext = false;
                for (auto g : aut) {
                    bool ok = true;
                    for (int a = 0; a < k && ok; a++)
                        if ((*g)[dom[a]] != img[a]) ok = false;
                    if (ok) { ext = true; break; }
                }
                if (!ext) return false;
            }
        } while (std::next_permutation(sel.begin(), sel.end()));
    }
    return true;
}

int main(int argc, char** argv) {
    if (argc != 2) return 2;
    n = atoi(argv[1]);
    std::vector<int> p(n);
    for (int i = 0; i < n; i++) p[i] = i;
    do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    uint64_t labelled = 0;
    std::set<uint64_t> classes;
    for (uint64_t m = 0; m < (1ULL << (n * n)); m++) {
        std::vector<const std::vector<int>*> aut;
        for (const auto& q : perms)
            if (relabel(m, q) == m) aut.push_back(&q);
        if (!homogeneous(m, aut)) continue;
        labelled++;
        uint64_t best = UINT64_MAX;
        for (const auto& q : perms) best = std::min(best, relabel(m, q));
        classes.insert(best);
    }
    printf("n=%d homogeneous_labelled=%llu classes=%zu\n", n, (unsigned long long)labelled, classes.size());
    for (auto c : classes) printf("class %llu\n", (unsigned long long)c);
    return 0;
}
