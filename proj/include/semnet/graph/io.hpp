#pragma once

#include <iosfwd>
#include <string>

#include "semnet/graph/bipartite.hpp"
#include "semnet/graph/partition.hpp"
#include "semnet/graph/undirected.hpp"

namespace semnet {

// Edge-list text formats. Bipartite lines are `top_id<TAB>bottom_id`,
// monopartite lines `id_a<TAB>id_b[<TAB>weight]`; UTF-8; lines starting with
// `#` are comments. Writers additionally emit `#top<TAB>id`, `#bottom<TAB>id`
// and `#node<TAB>id` declaration comments for every node in order, which the
// readers honor so that isolated nodes and node order survive a round trip;
// other tools can ignore them as plain comments.

BipartiteGraph read_bipartite_edgelist(std::istream& in);
BipartiteGraph read_bipartite_edgelist_file(const std::string& path);
void write_bipartite_edgelist(std::ostream& out, const BipartiteGraph& g);
void write_bipartite_edgelist_file(const std::string& path, const BipartiteGraph& g);

UndirectedGraph read_undirected_edgelist(std::istream& in);
UndirectedGraph read_undirected_edgelist_file(const std::string& path);
void write_undirected_edgelist(std::ostream& out, const UndirectedGraph& g);
void write_undirected_edgelist_file(const std::string& path, const UndirectedGraph& g);

// Partition CSV `node,community` over a graph's node identifiers.
void write_partition_csv(std::ostream& out, const UndirectedGraph& g, const Partition& p);
void write_partition_csv_file(const std::string& path, const UndirectedGraph& g, const Partition& p);

// Labeling CSV `node,final_label,label,count`, one row per observed label per
// node; an empty `label` field records runs that left the node unlabeled.
void write_labeling_csv(std::ostream& out, const UndirectedGraph& g, const NodeLabeling& labeling);
void write_labeling_csv_file(const std::string& path, const UndirectedGraph& g,
                             const NodeLabeling& labeling);

// Seeds CSV `node,label`.
std::map<std::string, std::string> read_seeds_csv(std::istream& in);
std::map<std::string, std::string> read_seeds_csv_file(const std::string& path);

// Formats a double with enough digits to round-trip exactly; all CSV/JSON
// writers use it so reruns are byte-identical.
std::string format_double(double v);

// Minimal CSV field quoting (RFC 4180 style) for identifiers that may carry
// commas or quotes.
std::string csv_escape(const std::string& field);

}  // namespace semnet
