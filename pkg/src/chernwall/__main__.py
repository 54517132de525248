from chernwall.cli import main

raise SystemExit(main())
