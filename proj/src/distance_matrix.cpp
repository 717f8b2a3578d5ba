/// @file distance_matrix.cpp

#include "dkit/distance_matrix.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dkit::core {

std::string ext_to_string(ExtReal a) {
    if (a.is_infinite()) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", a.finite_value());
    return buf;
}

ExtReal ext_from_string(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    if (t == "inf" || t == "+inf" || t == "Inf" || t == "INF") return ExtReal::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw InputError("matrix cell is neither a decimal nor `inf`: '" + s + "'");
    }
    if (pos != t.size()) {
        throw InputError("trailing junk in matrix cell: '" + s + "'");
    }
    if (v < 0.0) throw InputError("negative distance entry: '" + s + "'");
    return ExtReal(v);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size()) {}

std::size_t DistanceMatrix::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    throw InputError("unknown label: '" + label + "'");
}

bool DistanceMatrix::has_infinite_entry() const noexcept {
    for (const ExtReal& e : entries_) {
        if (e.is_infinite()) return true;
    }
    return false;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

DistanceMatrix DistanceMatrix::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty matrix file: " + path);
    std::vector<std::string> labels;
    for (const std::string& cell : split_csv_line(line)) {
        std::string l = trim(cell);
        if (l.empty()) throw InputError("empty label in header of " + path);
        labels.push_back(l);
    }
    DistanceMatrix m(labels);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!std::getline(in, line)) {
            throw InputError("matrix not square: missing row " + std::to_string(i));
        }
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != labels.size()) {
            throw InputError("matrix not square: row " + std::to_string(i) + " has " +
                             std::to_string(cells.size()) + " cells");
        }
        for (std::size_t j = 0; j < labels.size(); ++j) {
            m.set(i, j, ext_from_string(cells[j]));
        }
    }
    return m;
}

void DistanceMatrix::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write matrix file: " + path);
    for (std::size_t j = 0; j < size(); ++j) {
        out << (j ? "," : "") << labels_[j];
    }
    out << "\n";
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            out << (j ? "," : "") << ext_to_string(at(i, j));
        }
        out << "\n";
    }
}

bool Relation::contains(const Relation& other) const {
    if (size() != other.size()) return false;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (other.bits_[k] && !bits_[k]) return false;
    }
    return true;
}

bool Relation::is_reflexive() const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (!at(i, i)) return false;
    }
    return true;
}

bool Relation::is_irreflexive() const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (at(i, i)) return false;
    }
    return true;
}

bool Relation::is_transitive() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!at(i, j)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (at(j, k) && !at(i, k)) return false;
            }
        }
    }
    return true;
}

bool Relation::is_antisymmetric() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) && at(j, i)) return false;
        }
    }
    return true;
}

std::size_t Relation::pair_count() const {
    std::size_t c = 0;
    for (std::uint8_t b : bits_) c += b;
    return c;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::strict_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i != j && at(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

}  // namespace dkit::core
