"""heavycycle: cycles lourds, circonférence et vérification sur les petits graphes"""
