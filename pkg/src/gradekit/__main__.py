from gradekit.cli import main

main()
