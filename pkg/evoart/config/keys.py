from typing import Dict

# Ambient settings are flat: every value is a string.
ConfigDict = Dict[str, str]

DEFAULTS: ConfigDict = {
    "EVOART_LOGLEVEL": "INFO",
    "EVOART_PROGRESS": "true",
    "EVOART_CMD_ASCII": "false",
    "EVOART_WORKERS": "1",
}

ALL_KEYS = list(DEFAULTS.keys())

# Dictionary of keys to a Markdown snippet with documentation.
# A unit test enforces that each key in ALL_KEYS has a documentation in KEY_DOCS.
KEY_DOCS: Dict[str, str] = {
    "EVOART_LOGLEVEL": """Logging threshold (log messages not emitted below this).  
Accepted values are CRITICAL, ERROR, WARNING, INFO and DEBUG.  
This can also be changed by passing `--verbosity` to `evoart`, e.g. `evoart --verbosity DEBUG run ...`.""",
    "EVOART_PROGRESS": "Whether to show a progress bar for the generation loop of `evoart run` and the runs of `evoart sweep`.",
    "EVOART_CMD_ASCII": "Draw progress bars with ASCII characters only.",
    "EVOART_WORKERS": "Number of threads used to produce and score children (and to execute sweep runs). Results are identical for every value.",
}

# Documentation of the evolution parameter file keys (see evoart.config.parameters).
# A unit test enforces that each parameter has a documentation here.
PARAMETER_DOCS: Dict[str, str] = {
    "number_of_parents": "Number of independent parents (lineages) evolved side by side.",
    "children_per_parent": "Number of children each parent produces every generation. The best child replaces the parent if it scores strictly better.",
    "polygons": "Number of polygon genes in a genome.",
    "circles": "Number of circle genes in a genome.",
    "lines": "Number of thick line genes in a genome.",
    "vertices": "Number of vertices of every polygon.",
    "mutation_probability": "Per-gene mutation probability (or, in chunk mode, the fraction of the genome mutated every generation).",
    "genetic_restructure_rate": "Probability of an extra full-range mutation of every gene during the first tenth of the generations. 0 disables it.",
    "soft_mutation_rate": "Largest change soft mutation makes to a parameter, as a fraction of the parameter's legal span.",
    "hybrid_soft": "Number of consecutive generations of soft mutation in the hybrid schedule.",
    "hybrid_medium": "Number of consecutive generations of medium mutation in the hybrid schedule. 0 disables medium mutation.",
    "chunk_mutation": "Mutate exactly round(mutation_probability * genome length) genes (drawn with replacement, at least one) instead of mutating every gene independently.",
    "crossover_mutation": "Build every child from its parent's geometry and another parent's colors and alpha before mutating it.",
    "gene_swap": "With probability mutation_probability, exchange two gene positions (changing the render order) after mutating a child.",
    "save_rate": "Generation interval at which every parent's image and genome are saved.",
    "max_generations": "Number of generations in a run.",
    "seed": "Seed of the random streams. The same seed, parameters and target image give identical results.",
}
