from whmetric.cli import main

main()
