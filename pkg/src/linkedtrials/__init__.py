"""Trial-data triplification and semantic link discovery.

String matching uses RSJ-weighted Jaccard similarity over padded q-grams;
semantic matching uses a concept thesaurus.  See the submodules:

- ``entity_model``  value types, URI minting
- ``trial_ingest``  XML -> entity graph -> triples
- ``qgram_sim``     tokenizer, token weights, similarity
- ``simjoin``       threshold joins (indexed and brute force)
- ``semjoin``       thesaurus loading and matching
- ``linkpipe``      link specs, statistics, link triples
"""

__version__ = "0.1.0"

from .entity_model import (  # noqa: E402
    EntityRecord,
    EntitySet,
    Link,
    LinkType,
    MatchMethod,
    Triple,
    Uri,
    mint_uri,
    normalize_name,
)
from .qgram_sim import (  # noqa: E402
    TokenSet,
    WeightTable,
    build_weight_table,
    similarity,
    tokenize,
    weighted_jaccard,
)
from .semjoin import Thesaurus, concepts_of, load_thesaurus, relation_closure, semantic_join  # noqa: E402
from .simjoin import JoinResult, brute_force_join, indexed_join  # noqa: E402
from .trial_ingest import (  # noqa: E402
    EntityGraph,
    TrialDocument,
    build_entity_graph,
    entity_stats,
    parse_trial_xml,
    triplify,
)
from .linkpipe import (  # noqa: E402
    ExactMatch,
    LinkSet,
    LinkSpec,
    SemanticMatch,
    StatsRow,
    StringMatch,
    compute_stats,
    emit_links,
    exact_match,
    run_linkspec,
)
