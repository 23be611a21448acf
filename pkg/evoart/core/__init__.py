"""Core evoart functionality: genomes, rendering, fitness, mutation, the evolution loop and sweeps.

The engine is layered bottom-up:

  * :mod:`evoart.core.genome` defines genomes of polygon, circle and line genes.
  * :mod:`evoart.core.raster` paints a genome onto a black canvas.
  * :mod:`evoart.core.fitness` compares a rendering with the target image.
  * :mod:`evoart.core.mutation` and :mod:`evoart.core.evolution` evolve a population of parents.
  * :mod:`evoart.core.experiment` repeats runs over a swept parameter and aggregates them.
"""
