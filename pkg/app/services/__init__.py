# Services de calcul: motifs, sommets lourds, o-cycles, circonférence, familles, théorèmes
