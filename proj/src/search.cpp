namespace g2cover {}
