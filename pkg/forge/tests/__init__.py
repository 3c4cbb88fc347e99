# test package