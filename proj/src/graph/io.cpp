#include "semnet/graph/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "semnet/core/errors.hpp"

namespace semnet {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::ofstream create_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

BipartiteGraph read_bipartite_edgelist(std::istream& in) {
    std::vector<std::string> top_ids, bottom_ids;
    std::unordered_map<std::string, std::uint32_t> top_idx, bottom_idx;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    auto intern = [](std::vector<std::string>& ids, std::unordered_map<std::string, std::uint32_t>& m,
                     const std::string& id) {
        auto [it, inserted] = m.emplace(id, static_cast<std::uint32_t>(ids.size()));
        if (inserted) ids.push_back(id);
        return it->second;
    };

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip_cr(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto f = split_tabs(line);
            if (f.size() == 2 && f[0] == "#top") intern(top_ids, top_idx, f[1]);
            else if (f.size() == 2 && f[0] == "#bottom") intern(bottom_ids, bottom_idx, f[1]);
            continue;
        }
        const auto f = split_tabs(line);
        if (f.size() != 2 || f[0].empty() || f[1].empty())
            throw DataError("bipartite edge list: bad line " + std::to_string(lineno));
        edges.emplace_back(intern(top_ids, top_idx, f[0]), intern(bottom_ids, bottom_idx, f[1]));
    }
    return BipartiteGraph::from_edges(std::move(top_ids), std::move(bottom_ids), edges);
}

BipartiteGraph read_bipartite_edgelist_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_bipartite_edgelist(in);
}

void write_bipartite_edgelist(std::ostream& out, const BipartiteGraph& g) {
    for (const auto& id : g.top_ids()) out << "#top\t" << id << '\n';
    for (const auto& id : g.bottom_ids()) out << "#bottom\t" << id << '\n';
    for (std::uint32_t i = 0; i < g.top_count(); ++i)
        for (std::uint32_t a : g.top_adjacency(i))
            out << g.top_id(i) << '\t' << g.bottom_id(a) << '\n';
}

void write_bipartite_edgelist_file(const std::string& path, const BipartiteGraph& g) {
    auto out = create_or_throw(path);
    write_bipartite_edgelist(out, g);
}

UndirectedGraph read_undirected_edgelist(std::istream& in) {
    std::vector<std::string> ids;
    std::unordered_map<std::string, std::uint32_t> idx;
    std::vector<UndirectedGraph::Edge> edges;
    auto intern = [&](const std::string& id) {
        auto [it, inserted] = idx.emplace(id, static_cast<std::uint32_t>(ids.size()));
        if (inserted) ids.push_back(id);
        return it->second;
    };

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip_cr(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto f = split_tabs(line);
            if (f.size() == 2 && f[0] == "#node") intern(f[1]);
            continue;
        }
        const auto f = split_tabs(line);
        if ((f.size() != 2 && f.size() != 3) || f[0].empty() || f[1].empty())
            throw DataError("edge list: bad line " + std::to_string(lineno));
        double w = 1.0;
        if (f.size() == 3) {
            const char* begin = f[2].data();
            const char* end = begin + f[2].size();
            auto [p, ec] = std::from_chars(begin, end, w);
            if (ec != std::errc() || p != end)
                throw DataError("edge list: bad weight on line " + std::to_string(lineno));
        }
        edges.push_back({intern(f[0]), intern(f[1]), w});
    }
    return UndirectedGraph::from_edges(std::move(ids), std::move(edges));
}

UndirectedGraph read_undirected_edgelist_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_undirected_edgelist(in);
}

void write_undirected_edgelist(std::ostream& out, const UndirectedGraph& g) {
    for (const auto& id : g.node_ids()) out << "#node\t" << id << '\n';
    for (const auto& e : g.edges()) {
        out << g.node_id(e.a) << '\t' << g.node_id(e.b);
        if (g.is_weighted()) out << '\t' << format_double(e.weight);
        out << '\n';
    }
}

void write_undirected_edgelist_file(const std::string& path, const UndirectedGraph& g) {
    auto out = create_or_throw(path);
    write_undirected_edgelist(out, g);
}

void write_partition_csv(std::ostream& out, const UndirectedGraph& g, const Partition& p) {
    out << "node,community\n";
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        out << csv_escape(g.node_id(i)) << ',' << p.community_of[i] << '\n';
}

void write_partition_csv_file(const std::string& path, const UndirectedGraph& g, const Partition& p) {
    auto out = create_or_throw(path);
    write_partition_csv(out, g, p);
}

void write_labeling_csv(std::ostream& out, const UndirectedGraph& g, const NodeLabeling& labeling) {
    out << "node,final_label,label,count\n";
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        for (const auto& [label, count] : labeling.frequencies[i]) {
            out << csv_escape(g.node_id(i)) << ',' << csv_escape(labeling.final_label[i]) << ','
                << csv_escape(label) << ',' << count << '\n';
        }
    }
}

void write_labeling_csv_file(const std::string& path, const UndirectedGraph& g,
                             const NodeLabeling& labeling) {
    auto out = create_or_throw(path);
    write_labeling_csv(out, g, labeling);
}

std::map<std::string, std::string> read_seeds_csv(std::istream& in) {
    std::map<std::string, std::string> seeds;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip_cr(raw);
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line == "node,label") continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 >= line.size())
            throw DataError("seeds csv: bad line " + std::to_string(lineno));
        seeds[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return seeds;
}

std::map<std::string, std::string> read_seeds_csv_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_seeds_csv(in);
}

}  // namespace semnet
