#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sfscert/certify.hpp"

namespace testgen {

using Json = sfscert::Json;

struct Mutation {
    std::string what;
    Json cert;
};

namespace detail {

inline bool is_coord_vector(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& x : j)
        if (!x.is_string() || x.get<std::string>().find_first_not_of("0123456789") != std::string::npos) return false;
    return true;
}

inline std::vector<std::size_t> pick_positions(std::mt19937& rng, std::size_t n, std::size_t cap) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (n <= cap) return all;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(cap);
    std::sort(all.begin(), all.end());
    return all;
}

inline std::string big_plus(const std::string& s, long d) { return sfscert::to_string(sfscert::BigInt(s) + d); }

class Battery {
   public:
    Battery(const Json& root, std::mt19937& rng) : root_(root), rng_(rng) {}

    std::vector<Mutation> run() {
        walk(Json::json_pointer(), root_, "");
        return std::move(out_);
    }

   private:
    void emit(const Json::json_pointer& ptr, Json value, const std::string& what) {
        Json m = root_;
        m[ptr] = std::move(value);
        if (m == root_) return;
        out_.push_back({ptr.to_string() + ": " + what, std::move(m)});
    }

    void coords(const Json::json_pointer& ptr, const Json& v, const std::string& key) {
        const std::size_t n = v.size();
        const bool small = n <= 12;
        std::vector<std::size_t> nonzero, zero;
        for (std::size_t i = 0; i < n; ++i) (v[i].get<std::string>() == "0" ? zero : nonzero).push_back(i);
        std::vector<std::size_t> pos;
        if (small) {
            pos = pick_positions(rng_, n, n);
        } else {
            for (auto i : pick_positions(rng_, nonzero.size(), 12)) pos.push_back(nonzero[i]);
            for (auto i : pick_positions(rng_, zero.size(), 8)) pos.push_back(zero[i]);
        }
        std::vector<long> deltas = small ? std::vector<long>{1, 2, 3, 4, 5, 10, 100} : std::vector<long>{1, 2, 100};
        for (auto i : pos) {
            const std::string x = v[i].get<std::string>();
            for (long d : deltas) {
                Json w = v;
                w[i] = big_plus(x, d);
                emit(ptr, w, "coordinate " + std::to_string(i) + " + " + std::to_string(d));
            }
            if (x != "0") {
                Json w = v;
                w[i] = big_plus(x, -1);
                emit(ptr, w, "coordinate " + std::to_string(i) + " - 1");
                w[i] = "0";
                emit(ptr, w, "coordinate " + std::to_string(i) + " := 0");
            }
            if (i + 1 < n && v[i] != v[i + 1]) {
                Json w = v;
                std::swap(w[i], w[i + 1]);
                emit(ptr, w, "swap coordinates " + std::to_string(i) + ", " + std::to_string(i + 1));
            }
        }
        // curve swaps: the empty curve, two parallel copies, a cyclic shift by one triangle
        if (key == "curve" || key == "eta" || key == "gamma" || key == "mu") {
            Json z = v, d = v, s = v;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = "0";
                d[i] = sfscert::to_string(sfscert::BigInt(v[i].get<std::string>()) * 2);
                s[i] = v[(i + 3) % n];
            }
            emit(ptr, z, "curve := 0");
            emit(ptr, d, "curve := 2 curve");
            emit(ptr, s, "curve shifted by one triangle");
        }
        Json shorter = v;
        shorter.erase(shorter.size() - 1);
        emit(ptr, shorter, "drop last coordinate");
    }

    void labels(const Json::json_pointer& ptr, const Json& v) {
        for (auto i : pick_positions(rng_, v.size(), 12)) {
            Json w = v;
            w[i] = -w[i].get<int>();
            emit(ptr, w, "flip label " + std::to_string(i));
        }
    }

    void correspondence(const Json::json_pointer& ptr, const Json& v) {
        for (auto i : pick_positions(rng_, v.size(), 5)) {
            Json w = v;
            w[i][0] = w[i][0].get<int>() + 1;
            emit(ptr, w, "entry " + std::to_string(i) + " old tetrahedron + 1");
            w = v;
            w[i][1] = w[i][1].get<int>() + 1;
            emit(ptr, w, "entry " + std::to_string(i) + " region + 1");
        }
    }

    void triangulation_text(const Json::json_pointer& ptr, const std::string& text) {
        std::vector<std::string> lines;
        std::istringstream is(text);
        for (std::string l; std::getline(is, l);) lines.push_back(l);
        std::vector<std::size_t> glue;
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (lines[i].rfind("glue", 0) == 0) glue.push_back(i);
        auto join = [](const std::vector<std::string>& ls) {
            std::string s;
            for (const auto& l : ls) s += l + "\n";
            return s;
        };
        for (auto k : pick_positions(rng_, glue.size(), 4)) {
            std::size_t i = glue[k];
            auto ls = lines;
            ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(i));
            emit(ptr, join(ls), "drop line " + std::to_string(i));
            ls = lines;
            std::string& l = ls[i];
            std::swap(l[l.size() - 1], l[l.size() - 2]);
            emit(ptr, join(ls), "swap permutation digits on line " + std::to_string(i));
        }
    }

    void walk(const Json::json_pointer& ptr, const Json& j, const std::string& key) {
        if (key == "labels" && j.is_array()) return labels(ptr, j);
        if (key == "correspondence" && j.is_array()) return correspondence(ptr, j);
        if (is_coord_vector(j)) return coords(ptr, j, key);
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) walk(ptr / it.key(), it.value(), it.key());
            Json m = root_;
            m[ptr].erase(m[ptr].begin().key());
            out_.push_back({ptr.to_string() + ": drop field " + j.begin().key(), std::move(m)});
            return;
        }
        if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) walk(ptr / i, j[i], key);
            return;
        }
        if (j.is_number_integer()) {
            emit(ptr, j.get<long>() + 1, "+ 1");
            emit(ptr, j.get<long>() - 1, "- 1");
            return;
        }
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            if (s.rfind("tets", 0) == 0) return triangulation_text(ptr, s);
            std::vector<std::string> alts;
            if (key == "variant") alts = {"SolidTorus", "ThickenedTorus", "KTwistedI", "CircleBundle", "MultiplicityTwo", "GeneralSFS"};
            else if (key == "kind") alts = {"horizontal", "vertical"};
            alts.push_back(s + "x");
            for (const auto& a : alts)
                if (a != s) emit(ptr, a, "\"" + s + "\" -> \"" + a + "\"");
        }
    }

    Json root_;
    std::mt19937& rng_;
    std::vector<Mutation> out_;
};

}  // namespace detail

// Single-field mutations of a certificate: coordinate perturbations, curve swaps, orientation
// label flips, integer and name changes, correspondence and gluing edits, dropped fields.
inline std::vector<Mutation> mutation_battery(const std::string& cert_text, unsigned seed = 1) {
    std::mt19937 rng(seed);
    return detail::Battery(Json::parse(cert_text), rng).run();
}

}  // namespace testgen
