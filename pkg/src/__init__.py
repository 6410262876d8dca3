# MANET clustering simulator package
