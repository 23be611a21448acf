"""
evoart: evolves genomes of transparent, overlapping shapes (polygons, circles, thick lines)
towards a target image.
"""
