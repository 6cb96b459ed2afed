#include <memory>

#include "commands.hpp"
#include "geodlab/graph_core.hpp"

namespace geodlab::cli {

void add_graph_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("graph", "Validate graphs of groups and inspect their transfer matrices");
    grp->require_subcommand(1);
    auto path = std::make_shared<std::string>();

    auto* info = grp->add_subcommand("info", "Per-vertex orders, tree degrees and colour; columns: vertex,order,"
                                             "tree_degree,color,vol,tvol,bipartite");
    info->add_option("--graph", *path, "Graph JSON file")->required();
    info->callback([&run, path] {
        run = [path] {
            const Graph g = Graph::load_file(*path);
            const VolumeReport vr = volumes(g);
            Table t({"vertex", "order", "tree_degree", "color", "vol", "tvol", "bipartite"});
            for (int v = 0; v < g.num_vertices(); ++v)
                t.add({g.vertex(v).id, static_cast<long long>(g.vertex(v).order),
                       static_cast<long long>(g.tree_degree(v)),
                       vr.bipartite ? Cell(static_cast<long long>(vr.color[v])) : Cell(std::string()), vr.vol, vr.tvol,
                       vr.bipartite});
            return t;
        };
    });

    auto* tr = grp->add_subcommand("transfer", "Nonzero entries of the non-backtracking transfer matrix; columns: "
                                               "from,to,weight");
    tr->add_option("--graph", *path, "Graph JSON file")->required();
    tr->callback([&run, path] {
        run = [path] {
            const Graph g = Graph::load_file(*path);
            const Transfer B = nb_transfer(g);
            Table t({"from", "to", "weight"});
            for (std::size_t i = 0; i < B.B.rows(); ++i)
                for (std::size_t j = 0; j < B.B.cols(); ++j)
                    if (B.B(i, j) != 0.0)
                        t.add({g.edge(static_cast<int>(i)).id, g.edge(static_cast<int>(j)).id, B.B(i, j)});
            return t;
        };
    });
}

} // namespace geodlab::cli
