from torsurg.cli import main

main()
