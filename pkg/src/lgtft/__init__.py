"""Open-closed topological field theory data of affine B-type Landau-Ginzburg models."""
