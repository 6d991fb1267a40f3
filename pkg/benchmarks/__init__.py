# Solver benchmarks for schramm-bv
