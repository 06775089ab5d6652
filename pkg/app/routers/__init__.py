# Routeurs HTTP: graphes, familles extrémales, théorèmes, corpus, cache
