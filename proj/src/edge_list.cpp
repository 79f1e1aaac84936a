#include "cycleweave/edge_list.hpp"

#include <fstream>
#include <sstream>

namespace cycleweave {

namespace {

bool is_blank(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

EdgeListReadResult read_edge_list(std::istream& in) {
    std::string line;
    long long n = -1, declared_m = -1;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#')
            continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> declared_m) || n < 0 || declared_m < 0)
                throw ValidationError("line " + std::to_string(line_no) + ": expected header \"n m\"");
            continue;
        }
        long long u, v;
        if (!(ls >> u >> v))
            throw ValidationError("line " + std::to_string(line_no) + ": expected \"u v\"");
        std::string trail;
        if (ls >> trail)
            throw ValidationError("line " + std::to_string(line_no) + ": trailing tokens");
        if (u == v)
            throw ValidationError("line " + std::to_string(line_no) + ": self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ValidationError("line " + std::to_string(line_no) + ": vertex id out of range");
        pairs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    if (n < 0)
        throw ValidationError("missing \"n m\" header");

    EdgeListReadResult out;
    out.graph = Graph::from_edge_list(static_cast<VertexId>(n), pairs);
    if (out.graph.edge_count() != declared_m)
        out.warning = "header declares " + std::to_string(declared_m) + " edges but file has " +
                      std::to_string(out.graph.edge_count()) + " distinct edges; using actual count";
    return out;
}

EdgeListReadResult read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    write_edge_list(out, g);
}

} // namespace cycleweave
