"""Dense subgraph discovery on triangle graphs and k-clique graphs."""
from ._backend import BACKEND
from .cliquegraph import (
    CliqueGraph,
    build_k_clique_graph,
    build_triangle_graph,
    d_value,
    project,
    q_value,
    triangle_graph_density,
)
from .cliques import edge_triangle_counts, list_k_cliques, list_triangles, triangle_counts_per_edge
from .densest import (
    BoundReport,
    PeelingResult,
    Step,
    enumerate_exact,
    exact_oracle,
    greedy_ds,
    greedy_kgds,
    greedy_oqc,
    greedy_tds,
    greedy_tgds,
    run_greedy,
    verify_theorem1,
)
from .errors import (
    EmptyDocumentError,
    EmptyGraphError,
    GraphFormatError,
    InputError,
    InvalidVertexSetError,
    KcgdsError,
    NoCliquesError,
    NoKeywordsError,
    NoTrianglesError,
    ParameterError,
    PreconditionError,
    ResourceLimitError,
    UndefinedMetricError,
)
from .graph import (
    Graph,
    complete_graph,
    degree_density,
    density_delta,
    density_tau,
    graph_from_pairs,
    induced_subgraph,
    load_edge_list,
    oqc_objective,
    triangle_density,
    write_edge_list,
)
from .keywords import extract_keywords, graph_of_words, preprocess

__version__ = "0.1.0"
